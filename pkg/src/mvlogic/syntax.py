"""Formula AST, ASCII grammar, printer, and schema matching.

Grammar (whitespace-insensitive)::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := or (("->L" | "->G" | "->P") imp)?
    or      := and (("\\/" | "(+)") and)*
    and     := unary (("/\\" | "&L" | "&P" | "(-)") unary)*
    unary   := ("~L" | "~G" | "~Pi" | "~Post" | "Delta") unary | atom
    atom    := ident | "bot" | "top" | "#" digits | "(" formula ")"
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Union


class Connective(enum.Enum):
    NegL = ("NegL", 1, "~L")
    NegG = ("NegG", 1, "~G")
    NegPi = ("NegPi", 1, "~Pi")
    NegPost = ("NegPost", 1, "~Post")
    Delta = ("Delta", 1, "Delta")
    ImpL = ("ImpL", 2, "->L")
    ImpG = ("ImpG", 2, "->G")
    ImpPi = ("ImpPi", 2, "->P")
    ConjL = ("ConjL", 2, "&L")
    ConjPi = ("ConjPi", 2, "&P")
    Meet = ("Meet", 2, "/\\")
    Join = ("Join", 2, "\\/")
    Oplus = ("Oplus", 2, "(+)")
    Ominus = ("Ominus", 2, "(-)")
    Iff = ("Iff", 2, "<->")

    @property
    def tag(self) -> str:
        return self.value[0]

    @property
    def arity(self) -> int:
        return self.value[1]

    @property
    def token(self) -> str:
        return self.value[2]

    @classmethod
    def from_name(cls, name: str) -> "Connective":
        """Look up by tag ("ImpL"), case-insensitive tag ("impl"), or ASCII token ("->L")."""
        for c in cls:
            if name in (c.tag, c.token) or name.lower() == c.tag.lower():
                return c
        raise KeyError(f"unknown connective {name!r}")


# precedence levels used by the parser and the printer
_LEVEL = {
    Connective.Iff: 0,
    Connective.ImpL: 1, Connective.ImpG: 1, Connective.ImpPi: 1,
    Connective.Join: 2, Connective.Oplus: 2,
    Connective.Meet: 3, Connective.ConjL: 3, Connective.ConjPi: 3, Connective.Ominus: 3,
}
_UNARY_LEVEL = 4
_ATOM_LEVEL = 5

IMPLICATIONS = (Connective.ImpL, Connective.ImpG, Connective.ImpPi)

_UNICODE = {
    Connective.NegL: "¬L", Connective.NegG: "¬G", Connective.NegPi: "¬Π", Connective.NegPost: "¬P",
    Connective.Delta: "Δ", Connective.ImpL: "→L", Connective.ImpG: "→G", Connective.ImpPi: "→Π",
    Connective.ConjL: "&L", Connective.ConjPi: "&Π", Connective.Meet: "∧", Connective.Join: "∨",
    Connective.Oplus: "⊕", Connective.Ominus: "⊖", Connective.Iff: "↔",
}


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Falsum:
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class Verum:
    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True)
class GradedConst:
    level: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("graded constant level must be nonnegative")

    def __str__(self) -> str:
        return f"#{self.level}"


@dataclass(frozen=True)
class MetaVar:
    """Schema leaf standing for an arbitrary formula."""
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Apply:
    conn: Connective
    args: tuple

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.conn.arity:
            raise ValueError(f"{self.conn.tag} expects {self.conn.arity} argument(s), got {len(self.args)}")

    def __str__(self) -> str:
        return to_text(self)


Formula = Union[Var, Falsum, Verum, GradedConst, Apply]
Schema = Union[Var, Falsum, Verum, GradedConst, Apply, MetaVar]

BOT = Falsum()
TOP = Verum()


def app(conn: Connective, *args) -> Apply:
    return Apply(conn, tuple(args))


def imp_power(k: int, a, b, conn: Connective = Connective.ImpL):
    """a ->^k b with a ->^0 b = b and a ->^(k+1) b = a -> (a ->^k b)."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    out = b
    for _ in range(k):
        out = Apply(conn, (a, out))
    return out


# ---------------------------------------------------------------- parsing

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, kind: str = "syntax"):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.kind = kind


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_WS = re.compile(r"\s+")
_KEYWORDS = {"bot", "top", "Delta"}

_BINARY_TOKENS = {c.token: c for c in Connective if c.arity == 2}
_NEG_TOKENS = [("~Post", Connective.NegPost), ("~Pi", Connective.NegPi),
               ("~L", Connective.NegL), ("~G", Connective.NegG)]


@dataclass(frozen=True)
class _Tok:
    kind: str  # ident, num, op, lpar, rpar, eof
    text: str
    pos: int  # byte offset


def _tokenize(text: str) -> list:
    toks = []
    i = 0
    n = len(text)

    def boff(k):
        return len(text[:k].encode("utf-8"))

    while i < n:
        m = _WS.match(text, i)
        if m:
            i = m.end()
            continue
        ch = text[i]
        start = i
        if ch == "(":
            # "(+)" and "(-)" are operators, not groups
            if text.startswith("(+)", i) or text.startswith("(-)", i):
                toks.append(_Tok("op", text[i:i + 3], boff(start)))
                i += 3
            else:
                toks.append(_Tok("lpar", "(", boff(start)))
                i += 1
        elif ch == ")":
            toks.append(_Tok("rpar", ")", boff(start)))
            i += 1
        elif ch == "~":
            for tok, _c in _NEG_TOKENS:
                if text.startswith(tok, i):
                    toks.append(_Tok("op", tok, boff(start)))
                    i += len(tok)
                    break
            else:
                m = _IDENT.match(text, i + 1)
                bad = "~" + (m.group(0) if m else "")
                raise FormulaSyntaxError(f"unknown connective {bad!r}", boff(start), "connective")
        elif text.startswith("<->", i):
            toks.append(_Tok("op", "<->", boff(start)))
            i += 3
        elif text.startswith("->", i):
            suffix = text[i + 2:i + 3]
            if suffix in ("L", "G", "P"):
                toks.append(_Tok("op", "->" + suffix, boff(start)))
                i += 3
            else:
                raise FormulaSyntaxError(f"unknown connective {'->' + suffix!r}", boff(start), "connective")
        elif text.startswith("\\/", i) or text.startswith("/\\", i):
            toks.append(_Tok("op", text[i:i + 2], boff(start)))
            i += 2
        elif ch == "&":
            suffix = text[i + 1:i + 2]
            if suffix in ("L", "P"):
                toks.append(_Tok("op", "&" + suffix, boff(start)))
                i += 2
            else:
                raise FormulaSyntaxError(f"unknown connective {'&' + suffix!r}", boff(start), "connective")
        elif ch == "#":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise FormulaSyntaxError("expected digits after '#'", boff(j))
            toks.append(_Tok("num", text[i + 1:j], boff(start)))
            i = j
        else:
            m = _IDENT.match(text, i)
            if not m:
                raise FormulaSyntaxError(f"unexpected character {ch!r}", boff(start))
            word = m.group(0)
            toks.append(_Tok("op" if word == "Delta" else "ident", word, boff(start)))
            i = m.end()
    toks.append(_Tok("eof", "", boff(n)))
    return toks


class _Parser:
    def __init__(self, text: str, metavar):
        self.toks = _tokenize(text)
        self.i = 0
        self.metavar = metavar

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str):
        raise FormulaSyntaxError(msg, self.peek().pos)

    def formula(self):
        left = self.imp()
        while self.peek().kind == "op" and self.peek().text == "<->":
            self.take()
            left = Apply(Connective.Iff, (left, self.imp()))
        return left

    def imp(self):
        left = self.disj()
        t = self.peek()
        if t.kind == "op" and t.text in ("->L", "->G", "->P"):
            self.take()
            return Apply(_BINARY_TOKENS[t.text], (left, self.imp()))
        return left

    def disj(self):
        left = self.conj()
        while self.peek().kind == "op" and self.peek().text in ("\\/", "(+)"):
            c = _BINARY_TOKENS[self.take().text]
            left = Apply(c, (left, self.conj()))
        return left

    def conj(self):
        left = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("/\\", "&L", "&P", "(-)"):
            c = _BINARY_TOKENS[self.take().text]
            left = Apply(c, (left, self.unary()))
        return left

    def unary(self):
        t = self.peek()
        if t.kind == "op":
            for tok, c in _NEG_TOKENS + [("Delta", Connective.Delta)]:
                if t.text == tok:
                    self.take()
                    return Apply(c, (self.unary(),))
        return self.atom()

    def atom(self):
        t = self.peek()
        if t.kind == "ident":
            self.take()
            if t.text == "bot":
                return BOT
            if t.text == "top":
                return TOP
            if self.metavar(t.text):
                return MetaVar(t.text)
            return Var(t.text)
        if t.kind == "num":
            self.take()
            return GradedConst(int(t.text))
        if t.kind == "lpar":
            self.take()
            inner = self.formula()
            if self.peek().kind != "rpar":
                self.fail("expected ')'")
            self.take()
            return inner
        if t.kind == "eof":
            self.fail("unexpected end of input")
        self.fail(f"unexpected token {t.text!r}")


def _parse(text: str, metavar) -> Schema:
    p = _Parser(text, metavar)
    f = p.formula()
    if p.peek().kind != "eof":
        p.fail(f"unexpected token {p.peek().text!r}")
    return f


def parse(text: str) -> Formula:
    """Parse a concrete formula; every identifier is a propositional variable."""
    return _parse(text, lambda name: False)


def parse_schema(text: str) -> Schema:
    """Parse a schema; identifiers starting with an uppercase letter are metavariables."""
    return _parse(text, lambda name: name[0].isupper())


# ---------------------------------------------------------------- printing

def _level(f) -> int:
    if isinstance(f, Apply):
        return _UNARY_LEVEL if f.conn.arity == 1 else _LEVEL[f.conn]
    return _ATOM_LEVEL


def to_text(f, unicode: bool = False) -> str:
    """Print with the fewest parentheses that still reparse to the same tree."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, MetaVar):
        return f.name
    if isinstance(f, Falsum):
        return "⊥" if unicode else "bot"
    if isinstance(f, Verum):
        return "⊤" if unicode else "top"
    if isinstance(f, GradedConst):
        return f"#{f.level}"
    sym = _UNICODE[f.conn] if unicode else f.conn.token
    if f.conn.arity == 1:
        (a,) = f.args
        inner = to_text(a, unicode)
        if _level(a) < _UNARY_LEVEL:
            inner = f"({inner})"
        return f"{sym} {inner}"
    lv = _LEVEL[f.conn]
    a, b = f.args
    sa, sb = to_text(a, unicode), to_text(b, unicode)
    if lv == 1:  # right-associative
        if _level(a) <= lv:
            sa = f"({sa})"
        if _level(b) < lv:
            sb = f"({sb})"
    else:  # left-associative
        if _level(a) < lv:
            sa = f"({sa})"
        if _level(b) <= lv:
            sb = f"({sb})"
    return f"{sa} {sym} {sb}"


# ---------------------------------------------------------------- traversal

def subformulas(f) -> Iterator:
    yield f
    if isinstance(f, Apply):
        for a in f.args:
            yield from subformulas(a)


def variables(f) -> list:
    """Propositional variables in order of first occurrence."""
    seen = {}
    for g in subformulas(f):
        if isinstance(g, Var):
            seen.setdefault(g.name, None)
    return list(seen)


def metavariables(s) -> list:
    seen = {}
    for g in subformulas(s):
        if isinstance(g, MetaVar):
            seen.setdefault(g.name, None)
    return list(seen)


def connectives(f) -> set:
    return {g.conn for g in subformulas(f) if isinstance(g, Apply)}


def size(f) -> int:
    """Number of connective occurrences."""
    return sum(1 for g in subformulas(f) if isinstance(g, Apply))


def depth(f) -> int:
    if isinstance(f, Apply):
        return 1 + max(depth(a) for a in f.args)
    return 0


# ---------------------------------------------------------------- schemas

class SubstitutionError(KeyError):
    pass


def match_schema(s, f, sigma: Optional[Mapping] = None) -> Optional[dict]:
    """Find σ with substitute(s, σ) == f, extending `sigma` if given."""
    out = dict(sigma or {})
    stack = [(s, f)]
    while stack:
        a, b = stack.pop()
        if isinstance(a, MetaVar):
            bound = out.get(a.name)
            if bound is None:
                out[a.name] = b
            elif bound != b:
                return None
        elif isinstance(a, Apply):
            if not isinstance(b, Apply) or a.conn is not b.conn:
                return None
            stack.extend(zip(a.args, b.args))
        elif a != b:
            return None
    return out


def substitute(s, sigma: Mapping):
    if isinstance(s, MetaVar):
        try:
            return sigma[s.name]
        except KeyError:
            raise SubstitutionError(f"missing binding for metavariable {s.name}") from None
    if isinstance(s, Apply):
        return Apply(s.conn, tuple(substitute(a, sigma) for a in s.args))
    return s


def rename_vars(f, mapping: Mapping):
    """Replace propositional variables by formulas (the substitution rule)."""
    if isinstance(f, Var):
        return mapping.get(f.name, f)
    if isinstance(f, Apply):
        return Apply(f.conn, tuple(rename_vars(a, mapping) for a in f.args))
    return f
