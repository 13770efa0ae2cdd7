/**
 * Typed command entry, standing in for on-device speech recognition.
 *
 * Commands only reach the engine inside its listening window (opened by a
 * single-finger flick down); outside it the engine itself answers with a
 * spoken "not listening". Recognized commands: "search for <text>",
 * "filter by <attribute> <value>", "clear filter".
 */

export interface CommandBarHooks {
  submit(text: string): void;
}

export function attachCommandBar(
  form: HTMLFormElement,
  input: HTMLInputElement,
  hooks: CommandBarHooks,
): void {
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const text = input.value.trim();
    if (!text) return;
    hooks.submit(text);
    input.value = "";
  });
}
