"""Word files.

One decimal symbol per line; words are separated by blank lines; ``#`` starts
a comment line.  A binary word may instead be written on one line as
``hex:<n>:<digits>``, the n bits packed most significant first.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence


class InputError(ValueError):
    """Malformed input file (exit code 3)."""


def _parse_hex(line: str, lineno: int) -> tuple[int, ...]:
    try:
        _, n, digits = line.split(":", 2)
        n, value = int(n), int(digits, 16)
    except ValueError as exc:
        raise InputError(f"line {lineno}: bad packed word {line!r}") from exc
    if n < 1 or value >> n:
        raise InputError(f"line {lineno}: packed value does not fit in {n} bits")
    return tuple((value >> (n - 1 - i)) & 1 for i in range(n))


def parse_words(text: str) -> list[tuple[int, ...]]:
    words, cur = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if cur:
                words.append(tuple(cur))
                cur = []
            continue
        if line.startswith("hex:"):
            if cur:
                raise InputError(f"line {lineno}: packed word must stand alone")
            words.append(_parse_hex(line, lineno))
            continue
        try:
            v = int(line)
        except ValueError as exc:
            raise InputError(f"line {lineno}: expected a decimal symbol, got {line!r}") from exc
        if v < 0:
            raise InputError(f"line {lineno}: negative symbol")
        cur.append(v)
    if cur:
        words.append(tuple(cur))
    return words


def read_words(path: str | Path) -> list[tuple[int, ...]]:
    try:
        return parse_words(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def format_words(words: Iterable[Sequence[int]], packed: bool = False) -> str:
    blocks = []
    for w in words:
        if packed and all(s in (0, 1) for s in w):
            value = 0
            for s in w:
                value = (value << 1) | int(s)
            width = (len(w) + 3) // 4
            blocks.append(f"hex:{len(w)}:{value:0{width}x}")
        else:
            blocks.append("\n".join(str(int(s)) for s in w))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def write_words(path: str | Path, words: Iterable[Sequence[int]], packed: bool = False) -> None:
    Path(path).write_text(format_words(words, packed))
