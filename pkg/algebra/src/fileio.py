"""Line-based text formats for algebras, letter maps and accepting sets.

Algebra (``.fa``)::

    FA 1
    H m
    V n
    ZERO i
    ONE j
    ADDROW i: k0 ... k(m-1)      m lines
    MULROW i: ...                n lines
    ACTROW v: h'0 ... h'(m-1)    n lines
    INS h v                      m lines
    HNAME i name                 optional
    VNAME j name                 optional

Letter map (``.lm``): lines ``LETTER α v`` with α a forest label. Accepting
set (``.accept``): one line ``ACCEPT h ...``. ``#`` starts a comment everywhere.
"""
import re
from pathlib import Path
from typing import Iterable, Iterator

from algebra.src.tables import FiniteForestAlgebra, LetterMap
from forest.src.grammar import is_label
from src.errors import FormatError, MalformedTableError

FORMAT_HELP = __doc__
NAME_TOKEN = re.compile(r"[^\s#]+")


def tokenized_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def parse_int(token: str, path: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected an integer, found '{token}'", path, line)


def _row(tokens: list[str], path: str, line: int) -> tuple[int, list[int]]:
    if len(tokens) < 2 or not tokens[1].endswith(":"):
        raise FormatError(f"expected '{tokens[0]} i: ...'", path, line)
    return parse_int(tokens[1][:-1], path, line), [parse_int(t, path, line) for t in tokens[2:]]


def parse_algebra(text: str, path: str = "<string>") -> FiniteForestAlgebra:
    header = {}
    rows = {"ADDROW": {}, "MULROW": {}, "ACTROW": {}}
    ins: dict[int, int] = {}
    h_names: dict[int, str] = {}
    v_names: dict[int, str] = {}
    seen_magic = False
    for number, tokens in tokenized_lines(text):
        key = tokens[0]
        if not seen_magic:
            if tokens != ["FA", "1"]:
                raise FormatError("missing header 'FA 1'", path, number)
            seen_magic = True
        elif key in ("H", "V", "ZERO", "ONE") and len(tokens) == 2:
            header[key] = parse_int(tokens[1], path, number)
        elif key in rows:
            index, values = _row(tokens, path, number)
            rows[key][index] = values
        elif key == "INS" and len(tokens) == 3:
            ins[parse_int(tokens[1], path, number)] = parse_int(tokens[2], path, number)
        elif key == "HNAME" and len(tokens) == 3:
            h_names[parse_int(tokens[1], path, number)] = tokens[2]
        elif key == "VNAME" and len(tokens) == 3:
            v_names[parse_int(tokens[1], path, number)] = tokens[2]
        else:
            raise FormatError(f"unrecognized line '{' '.join(tokens)}'", path, number)
    if not seen_magic:
        raise FormatError("missing header 'FA 1'", path, 1)
    for key in ("H", "V"):
        if key not in header:
            raise FormatError(f"missing '{key}' line", path, 0)
    m, n = header["H"], header["V"]

    def table(kind: str, count: int) -> list[list[int]]:
        missing = [i for i in range(count) if i not in rows[kind]]
        if missing:
            raise FormatError(f"missing {kind} {missing[0]}", path, 0)
        return [rows[kind][i] for i in range(count)]

    missing_ins = [h for h in range(m) if h not in ins]
    if missing_ins:
        raise FormatError(f"missing INS {missing_ins[0]}", path, 0)
    try:
        return FiniteForestAlgebra(
            table("ADDROW", m), table("MULROW", n), table("ACTROW", n), [ins[h] for h in range(m)],
            header.get("ZERO", 0), header.get("ONE", 0),
            [h_names.get(i, str(i)) for i in range(m)] if h_names else None,
            [v_names.get(j, f"v{j}") for j in range(n)] if v_names else None,
        )
    except MalformedTableError as e:
        raise MalformedTableError(f"{path}: {e}")


def format_algebra(A: FiniteForestAlgebra) -> str:
    out = ["FA 1", f"H {A.h_size}", f"V {A.v_size}", f"ZERO {A.zero_h}", f"ONE {A.one_v}"]
    out += [f"ADDROW {i}: " + " ".join(str(int(x)) for x in A.add[i]) for i in range(A.h_size)]
    out += [f"MULROW {i}: " + " ".join(str(int(x)) for x in A.mul[i]) for i in range(A.v_size)]
    out += [f"ACTROW {v}: " + " ".join(str(int(x)) for x in A.act[v]) for v in range(A.v_size)]
    out += [f"INS {h} {int(A.ins[h])}" for h in range(A.h_size)]
    if all(NAME_TOKEN.fullmatch(name) for name in A.h_names):
        out += [f"HNAME {i} {name}" for i, name in enumerate(A.h_names)]
    if all(NAME_TOKEN.fullmatch(name) for name in A.v_names):
        out += [f"VNAME {j} {name}" for j, name in enumerate(A.v_names)]
    return "\n".join(out) + "\n"


def parse_letter_map(text: str, path: str = "<string>") -> LetterMap:
    mapping: dict[str, int] = {}
    order: list[str] = []
    for number, tokens in tokenized_lines(text):
        if tokens[0] != "LETTER" or len(tokens) != 3:
            raise FormatError("expected 'LETTER α v'", path, number)
        if tokens[1] in mapping:
            raise FormatError(f"letter '{tokens[1]}' assigned twice", path, number)
        if not is_label(tokens[1]):
            raise FormatError(f"letter '{tokens[1]}' is not a forest label", path, number)
        mapping[tokens[1]] = parse_int(tokens[2], path, number)
        order.append(tokens[1])
    return LetterMap(tuple(order), tuple(mapping[a] for a in order))


def format_letter_map(letters: LetterMap) -> str:
    return "".join(f"LETTER {a} {v}\n" for a, v in zip(letters.letters, letters.values))


def parse_accept(text: str, path: str = "<string>") -> frozenset[int]:
    accept: set[int] = set()
    for number, tokens in tokenized_lines(text):
        if tokens[0] != "ACCEPT":
            raise FormatError("expected 'ACCEPT h ...'", path, number)
        accept |= {parse_int(t, path, number) for t in tokens[1:]}
    return frozenset(accept)


def format_accept(accept: Iterable[int]) -> str:
    return "ACCEPT" + "".join(f" {h}" for h in sorted(accept)) + "\n"


def read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(e.strerror or str(e), path, 0)


def read_algebra(path: str) -> FiniteForestAlgebra:
    return parse_algebra(read_text(path), path)


def read_letter_map(path: str) -> LetterMap:
    return parse_letter_map(read_text(path), path)


def read_accept(path: str) -> frozenset[int]:
    return parse_accept(read_text(path), path)


def write_text(path: str, text: str):
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
