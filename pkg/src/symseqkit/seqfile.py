"""Line-oriented text format for sequences.

::

    symseq v1
    outputs a b
    inputs a b
    elem m : [a a] -> a
    action m swap(1) = m2

Colours and element names are whitespace-free tokens. ``#`` starts a
comment. Input words must be sorted in the declared colour order. A missing
``action`` line means the generator fixes that element. Pair colours
``(c, d)`` produced by the arithmetic product are written ``c.d``; nested
pairs nest the same way.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Hashable

from .gset import GSet, GSetError, validate_gset
from .perm import ColourSet
from .symseq import SymSeq, SymSeqError

HEADER = "symseq v1"
_TOKEN = re.compile(r"[^\s\[\]#:=()]+")


class SeqFileError(ValueError):
    """A syntax or validation error, located at ``line`` and ``column`` (1-based)."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column, self.message = line, column, message
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


# ---------------------------------------------------------------------------
# colour and element names


def colour_name(c: Hashable) -> str:
    """Text form of a colour; pairs become ``c.d``."""
    if isinstance(c, tuple):
        if len(c) != 2:
            raise SeqFileError(f"cannot write colour {c!r}")
        return f"{colour_name(c[0])}.{colour_name(c[1])}"
    s = str(c)
    if not s or not _TOKEN.fullmatch(s):
        raise SeqFileError(f"colour {c!r} is not a plain token")
    return s


_PLAIN = str.maketrans({"(": "<", ")": ">", "[": "<", "]": ">", "'": None, '"': None, " ": None})


def element_name(e: Hashable) -> str:
    """Text form of an element label.

    Engine results carry structured labels; those are written from their
    ``repr`` with brackets turned into angle brackets and quotes dropped.
    Any character the grammar still reserves is percent-escaped.
    """
    s = e if isinstance(e, str) else repr(e)
    if s and _TOKEN.fullmatch(s):
        return s
    s = s.translate(_PLAIN)
    return "".join(ch if _TOKEN.fullmatch(ch) and ch != "%" else f"%{ord(ch):02X}" for ch in s) or "%"


def _colour_names(cs: ColourSet) -> dict[str, Hashable]:
    names = {}
    for c in cs:
        n = colour_name(c)
        if n in names:
            raise SeqFileError(f"colours {names[n]!r} and {c!r} share the name {n!r}")
        names[n] = c
    return names


# ---------------------------------------------------------------------------
# serialization


def serialize_seq(M: SymSeq, max_arity: int | None = None) -> str:
    """Canonical text: points in key order, elements sorted by name.

    Lazy sequences must be given ``max_arity`` unless their support is
    known to be finite and small.
    """
    _colour_names(M.outputs)
    _colour_names(M.inputs)
    lines = [HEADER,
             "outputs " + " ".join(colour_name(c) for c in M.outputs),
             "inputs " + " ".join(colour_name(c) for c in M.inputs)]
    keys = M.key_list() if max_arity is None else M.keys_upto(max_arity)
    named = []
    count: dict[str, int] = {}
    for key in keys:
        g = M.point(key)
        if g is None:
            continue
        names = [element_name(M.element_label(key, e)) for e in g.elements]
        if len(set(names)) != len(names):
            names = [f"{n}~{i + 1}" for i, n in enumerate(names)]
        for n in names:
            count[n] = count.get(n, 0) + 1
        named.append((key, g, names))
    # a name used at several points is qualified by the point's position
    for pos, (key, g, names) in enumerate(named, start=1):
        names[:] = [n if count[n] == 1 else f"{n}~p{pos}" for n in names]
        w, x = key
        order = sorted(range(len(names)), key=names.__getitem__)
        word = " ".join(colour_name(c) for c in w)
        for i in order:
            lines.append(f"elem {names[i]} : [{word}] -> {colour_name(x)}")
        for k in sorted(g.gens):
            images = g.gens[k]
            for i in order:
                if images[i] != i:
                    lines.append(f"action {names[i]} swap({k + 1}) = {names[images[i]]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing


@dataclass
class _Cursor:
    text: str
    line: int
    pos: int = 0

    def error(self, msg: str) -> SeqFileError:
        return SeqFileError(msg, self.line, self.pos + 1)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def column(self) -> int:
        """1-based column of the next token."""
        self.skip()
        return self.pos + 1

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def token(self, what: str) -> str:
        self.skip()
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def expect(self, lit: str) -> None:
        self.skip()
        if not self.text.startswith(lit, self.pos):
            raise self.error(f"expected {lit!r}")
        self.pos += len(lit)

    def end(self) -> None:
        if not self.at_end():
            raise self.error("unexpected trailing text")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _declared(cur: _Cursor) -> list[str]:
    names = []
    while not cur.at_end():
        col = cur.column()
        n = cur.token("a colour name")
        if n in names:
            raise SeqFileError(f"duplicate colour {n!r}", cur.line, col)
        names.append(n)
    return names


def _colour_value(name: str):
    """Pair colours ``c.d`` are read back as tuples, nesting to the left."""
    if "." not in name:
        return name
    head, _, last = name.rpartition(".")
    return (_colour_value(head), last)


def parse_seq(text: str) -> SymSeq:
    """Parse and validate a sequence file."""
    outputs = inputs = None
    out_names: dict[str, Hashable] = {}
    in_names: dict[str, Hashable] = {}
    points: dict[tuple, list[str]] = {}
    where: dict[str, tuple] = {}
    actions: dict[tuple, dict[int, dict[str, str]]] = {}
    action_pos: dict[tuple, tuple[int, int]] = {}
    elem_line: dict[tuple, int] = {}
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        cur = _Cursor(body, lineno)
        if cur.at_end():
            continue
        start = cur.pos
        word = cur.token("a keyword")
        if not seen_header:
            if word != "symseq":
                raise SeqFileError("file must start with 'symseq v1'", lineno, start + 1)
            col = cur.column()
            version = cur.token("a version")
            if version != "v1":
                raise SeqFileError(f"unsupported version {version!r}", lineno, col)
            cur.end()
            seen_header = True
            continue
        if word == "outputs":
            if outputs is not None:
                raise SeqFileError("outputs declared twice", lineno, start + 1)
            names = _declared(cur)
            outputs = ColourSet(_colour_value(n) for n in names)
            out_names = dict(zip(names, outputs))
        elif word == "inputs":
            if inputs is not None:
                raise SeqFileError("inputs declared twice", lineno, start + 1)
            names = _declared(cur)
            inputs = ColourSet(_colour_value(n) for n in names)
            in_names = dict(zip(names, inputs))
        elif word == "elem":
            if outputs is None or inputs is None:
                raise SeqFileError("elem before outputs and inputs", lineno, start + 1)
            col = cur.column()
            name = cur.token("an element name")
            if name in where:
                raise SeqFileError(f"element {name!r} declared twice", lineno, col)
            cur.expect(":")
            cur.expect("[")
            w = []
            while True:
                cur.skip()
                if cur.text.startswith("]", cur.pos):
                    cur.pos += 1
                    break
                col = cur.column()
                c = cur.token("an input colour or ']'")
                if c not in in_names:
                    raise SeqFileError(f"unknown input colour {c!r}", lineno, col)
                w.append(in_names[c])
            cur.expect("->")
            col = cur.column()
            x = cur.token("an output colour")
            if x not in out_names:
                raise SeqFileError(f"unknown output colour {x!r}", lineno, col)
            cur.end()
            w = tuple(w)
            if not inputs.is_sorted(w):
                raise SeqFileError("input word is not sorted", lineno, body.index("[") + 1)
            key = (w, out_names[x])
            points.setdefault(key, []).append(name)
            elem_line.setdefault(key, lineno)
            where[name] = key
        elif word == "action":
            col = cur.column()
            name = cur.token("an element name")
            cur.expect("swap")
            cur.expect("(")
            kcol = cur.column()
            k = cur.token("a generator index")
            if not k.isdigit() or int(k) < 1:
                raise SeqFileError(f"generator index must be a positive integer, got {k!r}", lineno, kcol)
            cur.expect(")")
            cur.expect("=")
            icol = cur.column()
            image = cur.token("an element name")
            cur.end()
            for n, c in ((name, col), (image, icol)):
                if n not in where:
                    raise SeqFileError(f"unknown element {n!r}", lineno, c)
            key = where[name]
            if where[image] != key:
                raise SeqFileError(f"{name!r} and {image!r} live at different points", lineno, icol)
            gen = int(k) - 1
            table = actions.setdefault(key, {}).setdefault(gen, {})
            if name in table:
                raise SeqFileError(f"action of swap({k}) on {name!r} given twice", lineno, col)
            table[name] = image
            action_pos.setdefault((key, gen), (lineno, kcol))
        else:
            raise SeqFileError(f"unknown keyword {word!r}", lineno, start + 1)
    if not seen_header:
        raise SeqFileError("empty file: missing 'symseq v1' header", 1, 1)
    if outputs is None or inputs is None:
        raise SeqFileError("outputs and inputs must both be declared")
    support = {}
    for key, names in points.items():
        acts = actions.get(key, {})
        for gen in acts:
            if not 0 <= gen < len(key[0]) - 1:
                line, col = action_pos[(key, gen)]
                raise SeqFileError(f"swap({gen + 1}) is out of range for arity {len(key[0])}", line, col)
        try:
            g = GSet.from_names(key[0], names, acts)
        except GSetError as exc:
            raise SeqFileError(str(exc), elem_line[key], 1) from None
        bad = validate_gset(g)
        if bad:
            v = bad[0]
            line, col = action_pos.get((key, v.generators[0]), (elem_line[key], 1)) if v.generators \
                else (elem_line[key], 1)
            raise SeqFileError(f"action at [{' '.join(map(colour_name, key[0]))}] -> "
                               f"{colour_name(key[1])}: {v}", line, col)
        support[key] = g
    try:
        return SymSeq(outputs, inputs, support)
    except SymSeqError as exc:
        raise SeqFileError(f"invalid sequence: {exc}") from None


def read_seq(path) -> SymSeq:
    with open(path, encoding="utf-8") as fh:
        return parse_seq(fh.read())


def write_seq(M: SymSeq, path, max_arity: int | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_seq(M, max_arity))
