import re
from typing import List, Optional

from src.utils.errors import ParseError

_COMMENT = re.compile(r"#.*$")


def strip_line(line: str) -> str:
    """Remove a trailing '#' comment and surrounding whitespace."""
    return _COMMENT.sub("", line).strip()


def parse_int(token: str, line_no: int, what: str = "integer") -> int:
    """Convert a token to a non-negative int or raise ParseError."""
    if not re.fullmatch(r"\d+", token):
        raise ParseError(line_no, f"expected {what}, got {token!r}")
    return int(token)


def parse_header(tokens: List[str], line_no: int) -> int:
    """Parse the `n <count>` header line."""
    if len(tokens) != 2 or tokens[0] != "n":
        raise ParseError(line_no, "trace must start with header 'n <count>'")
    return parse_int(tokens[1], line_no, "vertex count")


def parse_vertex(token: str, n: int, line_no: int) -> int:
    v = parse_int(token, line_no, "vertex id")
    if v >= n:
        raise ParseError(line_no, f"vertex {v} out of range for n={n}")
    return v


def parse_int_list(text: Optional[str]) -> List[int]:
    """Parse a comma separated list such as '64,128,256'."""
    if not text:
        return []
    return [int(part) for part in text.split(",") if part.strip()]


def print_section_header(title: str) -> None:
    """Print a section header."""
    print("\n" + "=" * 50)
    print(title)
    print("=" * 50)
