"""Line-oriented block syntax for bundle files.

Every bundle file is UTF-8 text made of blocks.  A block starts with an
unindented header ``<kind> <id>`` and is followed by fields indented two
spaces per level:

    concept power-supply
      isa: thing
      lex: power-supply-n
      slots:
        colour: black
      action use:
        form: ekr "Switch [self] on"
        steps:
          - frame press actee=@switch1

Scalar values use a small grammar: ``"quoted"`` is a text string, ``@id``
is a node reference, ``12`` or ``12 kg`` is a number with optional unit,
``[a, b]`` is a list, anything else is a symbol.  ``#`` starts a full-line
comment.  Blank lines separate nothing and are ignored.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field

from ..actions import ActionRep, EntityRef, TextFiller
from ..errors import BundleFormatError
from .values import Quantity, Ref, Seq, SlotValue, Sym, Text

INDENT = 2

_NUMBER_RE = re.compile(r"^[+-]?\d+(\.\d+)?$")
_UNIT_RE = re.compile(r"^[A-Za-z%][A-Za-z0-9/%-]*$")
_EKR_REF_RE = re.compile(r"\[([^\[\]]+)\]")


@dataclass
class Block:
    kind: str
    id: str
    fields: dict = field(default_factory=dict)
    file: str = "<string>"
    line: int = 0


# -- reading ------------------------------------------------------------------


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        stripped = raw.lstrip(" ")
        indent_spaces = len(raw) - len(stripped)
        if "\t" in raw[: indent_spaces + 1]:
            raise BundleFormatError("tabs are not allowed in indentation", line=lineno)
        if indent_spaces % INDENT:
            raise BundleFormatError(f"indentation must be a multiple of {INDENT}", line=lineno)
        yield lineno, indent_spaces // INDENT, stripped.rstrip()


def _parse_level(lines: list, i: int, level: int, file: str):
    """Parse entries at one indentation level into a dict or list."""
    items: list = []
    mapping: dict = {}
    is_list = None
    while i < len(lines):
        lineno, lvl, text = lines[i]
        if lvl < level:
            break
        if lvl > level:
            raise BundleFormatError("unexpected indentation", file=file, line=lineno)
        if text.startswith("- "):
            if is_list is False:
                raise BundleFormatError("cannot mix list items and keys", file=file, line=lineno)
            is_list = True
            items.append(text[2:].strip())
            i += 1
            continue
        if is_list:
            raise BundleFormatError("cannot mix list items and keys", file=file, line=lineno)
        is_list = False
        if ":" not in text:
            raise BundleFormatError(f"expected 'key: value', got {text!r}", file=file, line=lineno)
        key, _, rest = text.partition(":")
        key = key.strip()
        rest = rest.strip()
        i += 1
        if rest:
            value = rest
        else:
            value, i = _parse_level(lines, i, level + 1, file)
        if key in mapping:
            raise BundleFormatError(f"duplicate key {key!r}", file=file, line=lineno)
        mapping[key] = value
    return (items if is_list else mapping), i


def parse_blocks(text: str, file: str = "<string>") -> list[Block]:
    lines = list(_significant_lines(text))
    blocks = []
    i = 0
    while i < len(lines):
        lineno, lvl, header = lines[i]
        if lvl != 0:
            raise BundleFormatError("expected a block header at column 0", file=file, line=lineno)
        parts = header.split()
        if len(parts) != 2:
            raise BundleFormatError(
                f"block header must be '<kind> <id>', got {header!r}", file=file, line=lineno
            )
        fields, i = _parse_level(lines, i + 1, 1, file)
        if isinstance(fields, list):
            raise BundleFormatError("block body must be keyed fields", file=file, line=lineno)
        blocks.append(Block(kind=parts[0], id=parts[1], fields=fields, file=file, line=lineno))
    return blocks


# -- value grammar -------------------------------------------------------------


def _split_top_level(s: str) -> list[str]:
    out, depth, quoted, cur = [], 0, False, []
    for ch in s:
        if ch == '"' :
            quoted = not quoted
            cur.append(ch)
        elif quoted:
            cur.append(ch)
        elif ch == "[":
            depth += 1
            cur.append(ch)
        elif ch == "]":
            depth -= 1
            cur.append(ch)
        elif ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if cur:
        out.append("".join(cur).strip())
    return [p for p in out if p]


def parse_value(s: str) -> SlotValue:
    s = s.strip()
    if not s:
        raise BundleFormatError("empty value")
    if s.startswith("[") and s.endswith("]"):
        return Seq(tuple(parse_value(p) for p in _split_top_level(s[1:-1])))
    if s.startswith('"') and s.endswith('"') and len(s) >= 2:
        return Text(s[1:-1].replace('\\"', '"'))
    if s.startswith("@"):
        return Ref(s[1:])
    head, _, tail = s.partition(" ")
    if _NUMBER_RE.match(head):
        tail = tail.strip()
        if not tail:
            return Quantity(float(head))
        if _UNIT_RE.match(tail):
            return Quantity(float(head), tail)
    return Sym(s)


def parse_id_list(s) -> list[str]:
    if isinstance(s, list):
        return [x.strip() for x in s if x.strip()]
    return [p for p in (part.strip() for part in s.split(",")) if p]


def parse_defining(s: str) -> frozenset:
    pairs = set()
    for part in _split_top_level(s):
        attr, sep, val = part.partition("=")
        if not sep:
            raise BundleFormatError(f"defining property must be attr=value, got {part!r}")
        pairs.add((attr.strip(), parse_value(val)))
    return frozenset(pairs)


# -- action representation lines ------------------------------------------------


def parse_rep_line(line: str) -> ActionRep:
    try:
        tokens = shlex.split(line)
    except ValueError as exc:
        raise BundleFormatError(f"bad action form: {exc}")
    if not tokens:
        raise BundleFormatError("empty action form")
    kind, rest = tokens[0], tokens[1:]
    if kind == "canned":
        if len(rest) != 1:
            raise BundleFormatError("canned form takes one quoted string")
        return ActionRep(kind="canned", text=rest[0])
    if kind == "ekr":
        if len(rest) != 1:
            raise BundleFormatError("ekr form takes one quoted string")
        return ActionRep(kind="ekr", segments=parse_ekr_segments(rest[0]))
    if kind in ("tcf", "frame"):
        if not rest:
            raise BundleFormatError(f"{kind} form needs a verb")
        verb, roles = rest[0], []
        for tok in rest[1:]:
            role, sep, filler = tok.partition("=")
            if not sep:
                raise BundleFormatError(f"role filler must be role=value, got {tok!r}")
            roles.append((role, _parse_filler(filler)))
        textual = any(isinstance(f, TextFiller) for _, f in roles)
        if kind == "frame" and textual:
            raise BundleFormatError("frame form may not contain textual fillers; use tcf")
        return ActionRep(kind=kind, verb=verb, roles=tuple(roles))
    raise BundleFormatError(f"unknown action form {kind!r}")


def _parse_filler(s: str):
    if s.startswith("@"):
        return EntityRef(s[1:])
    prep, sep, ref = s.partition(":@")
    if sep:
        return EntityRef(ref, prep=prep)
    return TextFiller(s)


def parse_ekr_segments(text: str) -> tuple:
    segments: list = []
    pos = 0
    for m in _EKR_REF_RE.finditer(text):
        if m.start() > pos:
            segments.append(text[pos : m.start()])
        segments.append(EntityRef(m.group(1)))
        pos = m.end()
    if pos < len(text):
        segments.append(text[pos:])
    return tuple(segments)


def parse_action_body(body, file: str, line: int) -> ActionRep:
    """An action field holds 'form:' and/or 'steps:' entries."""
    if isinstance(body, str):
        return parse_rep_line(body)
    if not isinstance(body, dict):
        raise BundleFormatError("action body must be form/steps fields", file=file, line=line)
    unknown = set(body) - {"form", "steps"}
    if unknown:
        raise BundleFormatError(
            f"unknown action fields: {', '.join(sorted(unknown))}", file=file, line=line
        )
    steps = tuple(parse_rep_line(s) for s in body.get("steps", []))
    if "form" in body:
        main = parse_rep_line(body["form"])
        return ActionRep(
            kind=main.kind,
            text=main.text,
            segments=main.segments,
            verb=main.verb,
            roles=main.roles,
            substeps=steps,
        )
    if not steps:
        raise BundleFormatError("action needs a form or steps", file=file, line=line)
    return ActionRep(kind="seq", substeps=steps)


# -- writing --------------------------------------------------------------------


def format_value(v: SlotValue) -> str:
    if isinstance(v, Sym):
        return v.name
    if isinstance(v, Text):
        return '"' + v.value.replace('"', '\\"') + '"'
    if isinstance(v, Quantity):
        num = f"{v.value:g}"
        return f"{num} {v.unit}" if v.unit else num
    if isinstance(v, Ref):
        return f"@{v.target}"
    if isinstance(v, Seq):
        return "[" + ", ".join(format_value(i) for i in v.items) + "]"
    raise TypeError(f"not a slot value: {v!r}")


def format_filler(f) -> str:
    if isinstance(f, TextFiller):
        return '"' + f.text.replace('"', '\\"') + '"'
    if f.prep:
        return f"{f.prep}:@{f.target}"
    return f"@{f.target}"


def format_rep_line(rep: ActionRep) -> str:
    if rep.kind == "canned":
        return 'canned "' + rep.text.replace('"', '\\"') + '"'
    if rep.kind == "ekr":
        text = "".join(
            seg if isinstance(seg, str) else f"[{seg.target}]" for seg in rep.segments
        )
        return 'ekr "' + text.replace('"', '\\"') + '"'
    if rep.kind in ("tcf", "frame"):
        parts = [rep.kind, rep.verb]
        parts.extend(f"{role}={format_filler(f)}" for role, f in rep.roles)
        return " ".join(parts)
    raise TypeError(f"cannot format a {rep.kind} rep as a line")


def write_action(name: str, rep: ActionRep, out: list, indent: int = 1):
    pad = " " * (INDENT * indent)
    out.append(f"{pad}action {name}:")
    inner = " " * (INDENT * (indent + 1))
    if rep.kind != "seq":
        bare = ActionRep(
            kind=rep.kind, text=rep.text, segments=rep.segments, verb=rep.verb, roles=rep.roles
        )
        out.append(f"{inner}form: {format_rep_line(bare)}")
    if rep.substeps:
        out.append(f"{inner}steps:")
        for step in rep.substeps:
            out.append(f"{inner}  - {format_rep_line(step)}")
