"""Tokenizer for MiniHack source text."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MiniHackSyntaxError

KEYWORDS = {"function", "foreach", "as", "if", "else", "return"}

# Multi-char operators first so maximal munch works on a sorted scan.
OPERATORS = [
    "=>", "->", "::", ".=", "+=", "==", "!=", "<=", ">=", "&&", "||",
    "{", "}", "(", ")", "[", "]", ",", ";",
    "=", "<", ">", "+", "-", "*", "/", ".", "%",
]


@dataclass(frozen=True)
class Token:
    kind: str  # var | name | keyword | int | string | op | eof
    text: str
    line: int
    col: int

    @property
    def end_col(self) -> int:
        return self.col + max(len(self.text) - 1, 0)


def _is_name_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_name_char(c: str) -> bool:
    return c.isalnum() or c == "_"


def tokenize(source: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def err(msg):
        raise MiniHackSyntaxError(msg, file=file, line=line, col=col)

    while i < n:
        c = source[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if source.startswith("/*", i):
            end = source.find("*/", i + 2)
            if end < 0:
                err("unterminated block comment")
            for ch in source[i:end + 2]:
                if ch == "\n":
                    line += 1
                    col = 1
                else:
                    col += 1
            i = end + 2
            continue
        if c == "$":
            j = i + 1
            if j >= n or not _is_name_start(source[j]):
                err("expected variable name after '$'")
            while j < n and _is_name_char(source[j]):
                j += 1
            text = source[i:j]
            tokens.append(Token("var", text, line, col))
            col += j - i
            i = j
            continue
        if _is_name_start(c):
            j = i
            while j < n and _is_name_char(source[j]):
                j += 1
            # Namespaced names: Vec\map_with_key
            while j < n and source[j] == "\\" and j + 1 < n and _is_name_start(source[j + 1]):
                j += 1
                while j < n and _is_name_char(source[j]):
                    j += 1
            text = source[i:j]
            kind = "keyword" if text in KEYWORDS else "name"
            tokens.append(Token(kind, text, line, col))
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("int", source[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in ("'", '"'):
            quote = c
            j = i + 1
            while j < n and source[j] != quote:
                if source[j] == "\n":
                    err("unterminated string literal")
                if source[j] == "\\" and j + 1 < n:
                    j += 1
                j += 1
            if j >= n:
                err("unterminated string literal")
            text = source[i:j + 1]
            tokens.append(Token("string", text, line, col))
            col += j + 1 - i
            i = j + 1
            continue
        for op in OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token("op", op, line, col))
                col += len(op)
                i += len(op)
                break
        else:
            err(f"unexpected character {c!r}")
    tokens.append(Token("eof", "", line, col))
    return tokens
