"""Tokenizer and parser for the PDF object syntax.

Objects map to Python values: dict -> dict[str, obj] keyed by name without
the slash, array -> list, name -> Name, string -> bytes, numbers -> int or
float, booleans/null -> bool/None, indirect references -> Ref.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PdfError

WHITESPACE = b"\x00\t\n\x0c\r "
DELIMITERS = b"()<>[]{}/%"


class Name(str):
    """A PDF name; subclasses str so dict keys compare naturally."""

    __slots__ = ()


@dataclass(frozen=True)
class Ref:
    num: int
    gen: int


class Keyword(str):
    """Bare keyword token (operators, obj/endobj, stream...)."""

    __slots__ = ()


def is_ws(byte: int) -> bool:
    return byte in WHITESPACE


def is_delim(byte: int) -> bool:
    return byte in DELIMITERS


def is_regular(byte: int) -> bool:
    return not is_ws(byte) and not is_delim(byte)


class Lexer:
    """Byte-level reader with positioned token extraction."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def skip_ws(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            b = data[self.pos]
            if is_ws(b):
                self.pos += 1
            elif b == 0x25:  # '%' comment to end of line
                while self.pos < n and data[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                return

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.data)

    def peek_bytes(self, n: int) -> bytes:
        return self.data[self.pos : self.pos + n]

    def read_token(self):
        """Next syntactic token: Name, Keyword, number, bytes string, or
        one of the structural markers '[', ']', '<<', '>>'."""
        self.skip_ws()
        data = self.data
        if self.pos >= len(data):
            raise PdfError("unexpected end of data")
        b = data[self.pos]
        if b == 0x2F:  # /
            return self._read_name()
        if b == 0x28:  # (
            return self._read_literal_string()
        if b == 0x3C:  # <
            if data[self.pos : self.pos + 2] == b"<<":
                self.pos += 2
                return "<<"
            return self._read_hex_string()
        if b == 0x3E:  # >
            if data[self.pos : self.pos + 2] == b">>":
                self.pos += 2
                return ">>"
            raise PdfError(f"stray '>' at offset {self.pos}")
        if b == 0x5B:  # [
            self.pos += 1
            return "["
        if b == 0x5D:  # ]
            self.pos += 1
            return "]"
        if b == 0x7B:  # {
            self.pos += 1
            return Keyword("{")
        if b == 0x7D:  # }
            self.pos += 1
            return Keyword("}")
        if b == 0x29:
            raise PdfError(f"stray ')' at offset {self.pos}")
        start = self.pos
        while self.pos < len(data) and is_regular(data[self.pos]):
            self.pos += 1
        raw = data[start : self.pos]
        if not raw:
            raise PdfError(f"cannot tokenize byte {b:#x} at offset {start}")
        return _number_or_keyword(raw)

    def _read_name(self) -> Name:
        data = self.data
        self.pos += 1
        out = bytearray()
        while self.pos < len(data) and is_regular(data[self.pos]):
            b = data[self.pos]
            if b == 0x23 and self.pos + 2 < len(data):  # '#' hex escape
                try:
                    out.append(int(data[self.pos + 1 : self.pos + 3], 16))
                    self.pos += 3
                    continue
                except ValueError:
                    pass
            out.append(b)
            self.pos += 1
        return Name(out.decode("latin-1"))

    def _read_literal_string(self) -> bytes:
        data = self.data
        self.pos += 1
        out = bytearray()
        depth = 1
        while self.pos < len(data):
            b = data[self.pos]
            self.pos += 1
            if b == 0x5C:  # backslash
                if self.pos >= len(data):
                    break
                e = data[self.pos]
                self.pos += 1
                if e in b"nrtbf":
                    out.append({0x6E: 10, 0x72: 13, 0x74: 9, 0x62: 8, 0x66: 12}[e])
                elif e in b"()\\":
                    out.append(e)
                elif 0x30 <= e <= 0x37:  # octal, up to 3 digits
                    oct_digits = [e]
                    for _ in range(2):
                        if self.pos < len(data) and 0x30 <= data[self.pos] <= 0x37:
                            oct_digits.append(data[self.pos])
                            self.pos += 1
                    out.append(int(bytes(oct_digits), 8) & 0xFF)
                elif e == 0x0D:  # line continuation
                    if self.pos < len(data) and data[self.pos] == 0x0A:
                        self.pos += 1
                elif e == 0x0A:
                    pass
                else:
                    out.append(e)
            elif b == 0x28:
                depth += 1
                out.append(b)
            elif b == 0x29:
                depth -= 1
                if depth == 0:
                    return bytes(out)
                out.append(b)
            else:
                out.append(b)
        raise PdfError("unterminated literal string")

    def _read_hex_string(self) -> bytes:
        data = self.data
        self.pos += 1
        digits = bytearray()
        while self.pos < len(data):
            b = data[self.pos]
            self.pos += 1
            if b == 0x3E:
                if len(digits) % 2:
                    digits.append(0x30)
                return bytes.fromhex(digits.decode("ascii"))
            if not is_ws(b):
                digits.append(b)
        raise PdfError("unterminated hex string")

    def read_object(self):
        """Parse a full object, folding `num gen R` into Ref."""
        token = self.read_token()
        return self._object_from(token)

    def _object_from(self, token):
        if token == "<<":
            return self._read_dict()
        if token == "[":
            return self._read_array()
        if isinstance(token, Keyword):
            if token == "true":
                return True
            if token == "false":
                return False
            if token == "null":
                return None
            return token
        if isinstance(token, int):
            return self._maybe_ref(token)
        return token

    def _maybe_ref(self, first: int):
        save = self.pos
        try:
            second = self.read_token()
            if isinstance(second, int) and second >= 0:
                third = self.read_token()
                if third == Keyword("R"):
                    return Ref(first, second)
        except PdfError:
            pass
        self.pos = save
        return first

    def _read_dict(self) -> dict:
        out: dict = {}
        while True:
            token = self.read_token()
            if token == ">>":
                return out
            if not isinstance(token, Name):
                raise PdfError(f"dictionary key is not a name: {token!r}")
            out[str(token)] = self.read_object()

    def _read_array(self) -> list:
        out: list = []
        while True:
            self.skip_ws()
            if self.peek_bytes(1) == b"]":
                self.pos += 1
                return out
            out.append(self.read_object())


def _number_or_keyword(raw: bytes):
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        return Keyword(raw.decode("latin-1", "replace"))
