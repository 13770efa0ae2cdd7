"""Invariants checked across every committed golden session log."""
import pytest

from sonigraph.session import SessionLog

from .goldens import DATA_DIR, GOLDENS

SUSTAIN_CLASSES = {"HornNote": "HornStop", "StringPluck": "StringStop"}


def golden_logs():
    for name in sorted(GOLDENS):
        text = (DATA_DIR / f"{name}.log").read_text(encoding="utf-8")
        yield name, SessionLog.from_text(text)


def parse_au(line):
    fields = {}
    for part in line.split()[2:]:
        if "=" in part:
            key, _, value = part.partition("=")
            fields[key] = value
    fields["t"] = int(line.split()[0].split("=")[1])
    return fields


@pytest.mark.parametrize("name", sorted(GOLDENS))
def test_every_sustain_has_a_later_stop(name):
    log = SessionLog.from_text((DATA_DIR / f"{name}.log").read_text())
    open_sustains = {}
    for line in log.lines:
        if " au " not in line:
            continue
        fields = parse_au(line)
        kind = fields["kind"]
        pointer = fields.get("pointer")
        if kind in SUSTAIN_CLASSES and fields.get("duration") == "sustained":
            key = (SUSTAIN_CLASSES[kind], pointer)
            assert key not in open_sustains, (
                f"{name}: new sustain before stop at t={fields['t']}"
            )
            open_sustains[key] = fields["t"]
        elif kind in ("HornStop", "StringStop"):
            key = (kind, pointer)
            opened = open_sustains.pop(key, None)
            assert opened is not None, f"{name}: orphan {kind} at t={fields['t']}"
            assert fields["t"] >= opened
    assert not open_sustains, f"{name}: sustains left open {open_sustains}"


@pytest.mark.parametrize("name", sorted(GOLDENS))
def test_log_records_are_time_ordered(name):
    log = SessionLog.from_text((DATA_DIR / f"{name}.log").read_text())
    times = [int(line.split()[0].split("=")[1]) for line in log.lines]
    assert times == sorted(times)


@pytest.mark.parametrize("name", sorted(GOLDENS))
def test_tone_envelopes_end_off(name):
    """A proximity tone that started always ends with an off record."""
    log = SessionLog.from_text((DATA_DIR / f"{name}.log").read_text())
    live = {}
    for line in log.lines:
        if " au kind=Tone150 " not in line:
            continue
        fields = parse_au(line)
        if fields["volume"] == "off":
            live.pop(fields.get("pointer"), None)
        else:
            live[fields.get("pointer")] = fields["t"]
    assert not live, f"{name}: tone left running for pointers {live}"


@pytest.mark.parametrize("name", sorted(GOLDENS))
def test_trace_files_reparse_to_identical_text(name):
    from sonigraph.traces import parse_trace, serialize_trace

    text = (DATA_DIR / f"{name}.trace").read_text(encoding="utf-8")
    assert serialize_trace(parse_trace(text)) == text
