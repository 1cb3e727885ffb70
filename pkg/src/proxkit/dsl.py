"""The declaration language: universes, sets, algebras, proximities,
sequences, maps, and check commands, in a small line-oriented grammar.

Declarations bind identifiers in order; every identifier must be declared
before use and duplicates are rejected. Set expressions combine literals
with ``+`` (union), ``-`` (difference) and ``&`` (intersection), applied
left to right, plus ``complement(...)`` and parentheses; the unicode
aliases from rendered sets are accepted. A trailing ``in U`` pins an
expression to a declared universe when inference would be ambiguous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import SetAlgebra
from .errors import ParseError
from .laws import expected_kinds, subject_kind
from .maps import FunctionSpec
from .proximity import Proximity
from .sequences import FunctionSequence, SetSequence
from .universe import INFINITY, SymSet, Universe, UniverseKind

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<flag>--[a-z_]+)
  | (?P<arrow>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_.]*)
  | (?P<number>\d+)
  | (?P<string>"[^"\n]*")
  | (?P<punct>[{}()\[\],:=+\-|&/∪∩∖])
""", re.VERBOSE)

_UNION_OPS = {"+", "|", "∪"}
_DIFF_OPS = {"-", "∖"}
_INTER_OPS = {"&", "∩"}
_SET_OPS = _UNION_OPS | _DIFF_OPS | _INTER_OPS


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(source: str) -> list[Token]:
    out = []
    line, col = 1, 1
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "newline":
            line += 1
            col = 1
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, text, line, col))
            col += len(text)
        else:
            col += len(text)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


# -- expression AST ----------------------------------------------------------


@dataclass(frozen=True)
class Ref:
    name: str
    token: Token


@dataclass(frozen=True)
class Braces:
    elements: tuple  # ints, Fractions, or INFINITY


@dataclass(frozen=True)
class PeriodicLit:
    period: int
    residues: tuple


@dataclass(frozen=True)
class IntervalLit:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool


@dataclass(frozen=True)
class ComplementExpr:
    inner: object


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "&"
    left: object
    right: object


@dataclass(frozen=True)
class Decl:
    kind: str
    name: str
    ast: object
    value: object
    token: Token


@dataclass(frozen=True)
class Command:
    kind: str        # "check" | "find_counterexample" | "stone" | "report"
    law: str | None
    args: tuple      # identifier names
    dot_path: str | None
    token: Token


@dataclass(frozen=True)
class Program:
    decls: tuple
    commands: tuple
    env: dict


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.env: dict = {}
        self.decls: list[Decl] = []
        self.commands: list[Command] = []

    # -- token helpers -----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            self.fail(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def expect_kind(self, kind: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            self.fail(f"expected {kind}, found {tok.text!r}", tok)
        return tok

    def accept(self, text: str) -> bool:
        if self.peek().text == text:
            self.pos += 1
            return True
        return False

    def plain_name(self) -> Token:
        tok = self.expect_kind("ident")
        if "." in tok.text:
            self.fail("identifiers may not contain dots", tok)
        return tok

    # -- program structure ----------------------------------------------------

    def parse(self) -> Program:
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.kind != "ident":
                self.fail(f"expected a declaration or command, found {tok.text!r}")
            handler = {
                "universe": self.parse_universe,
                "set": self.parse_set,
                "algebra": self.parse_algebra,
                "proximity": self.parse_proximity,
                "seq": self.parse_seq,
                "fn": self.parse_fn,
                "fnseq": self.parse_fnseq,
                "check": self.parse_check,
                "find_counterexample": self.parse_check,
                "stone": self.parse_stone,
                "report": self.parse_report,
            }.get(tok.text)
            if handler is None:
                self.fail(f"unknown keyword {tok.text!r}")
            handler()
        return Program(tuple(self.decls), tuple(self.commands), dict(self.env))

    def bind(self, kind: str, name_tok: Token, ast, value):
        if name_tok.text in self.env:
            self.fail(f"duplicate identifier {name_tok.text!r}", name_tok)
        self.env[name_tok.text] = value
        self.decls.append(Decl(kind, name_tok.text, ast, value, name_tok))

    def lookup(self, tok: Token):
        if tok.text not in self.env:
            self.fail(f"unknown identifier {tok.text}", tok)
        return self.env[tok.text]

    def universe_arg(self) -> Universe:
        tok = self.plain_name()
        value = self.lookup(tok)
        if not isinstance(value, Universe):
            self.fail(f"{tok.text} is not a universe", tok)
        return value

    # -- declarations -----------------------------------------------------------

    def parse_universe(self):
        self.expect("universe")
        name = self.plain_name()
        self.expect("=")
        tok = self.next()
        if tok.text == "finite":
            self.expect("(")
            n = int(self.expect_kind("number").text)
            self.expect(")")
            value, ast = Universe.finite(n), ("finite", n)
        elif tok.text == "integers":
            with_inf = self.accept("with_infinity")
            value, ast = Universe.integers(with_inf), ("integers", with_inf)
        elif tok.text == "unit_interval":
            value, ast = Universe.unit_interval(), ("unit_interval",)
        else:
            self.fail(f"unknown universe kind {tok.text!r}", tok)
        self.bind("universe", name, ast, value)

    def parse_set(self):
        self.expect("set")
        name = self.plain_name()
        self.expect("=")
        ast = self.parse_set_expr()
        target = self.universe_arg() if self.accept("in") else None
        value = self.resolve_set(ast, target)
        self.bind("set", name, ast, value)

    def parse_algebra(self):
        self.expect("algebra")
        name = self.plain_name()
        self.expect("=")
        tok = self.next()
        if tok.text in ("atoms", "generated"):
            self.expect("(")
            parts = [self.parse_set_expr()]
            while self.accept(","):
                parts.append(self.parse_set_expr())
            self.expect(")")
            target = self.universe_arg() if self.accept("in") else None
            builder = SetAlgebra.from_atoms if tok.text == "atoms" \
                else SetAlgebra.generated
            value = self.build_algebra(parts, target, builder, tok)
            ast = (tok.text, tuple(parts))
        elif tok.text == "finite_cofinite":
            self.expect("(")
            u = self.universe_arg()
            self.expect(")")
            value, ast = SetAlgebra.finite_cofinite(u), ("finite_cofinite", u)
        elif tok.text == "powerset":
            self.expect("(")
            u = self.universe_arg()
            self.expect(")")
            value, ast = SetAlgebra.powerset(u), ("powerset", u)
        else:
            self.fail(f"unknown algebra kind {tok.text!r}", tok)
        self.bind("algebra", name, ast, value)

    def parse_proximity(self):
        self.expect("proximity")
        name = self.plain_name()
        self.expect("=")
        tok = self.next()
        if tok.text in ("discrete", "one_point", "metric"):
            self.expect("(")
            u = self.universe_arg()
            self.expect(")")
            maker = {"discrete": Proximity.discrete,
                     "one_point": Proximity.one_point,
                     "metric": Proximity.metric}[tok.text]
            value, ast = maker(u), (tok.text, u)
        elif tok.text == "from_algebra":
            self.expect("(")
            ref = self.plain_name()
            algebra = self.lookup(ref)
            if not isinstance(algebra, SetAlgebra):
                self.fail(f"{ref.text} is not an algebra", ref)
            self.expect(")")
            value, ast = Proximity.from_algebra(algebra), ("from_algebra", ref.text)
        elif tok.text == "subspace":
            self.expect("(")
            ref = self.plain_name()
            parent = self.lookup(ref)
            if not isinstance(parent, Proximity):
                self.fail(f"{ref.text} is not a proximity", ref)
            self.expect(",")
            carrier_ast = self.parse_set_expr()
            self.expect(")")
            carrier = self.resolve_set(carrier_ast, parent.universe)
            value = Proximity.subspace(parent, carrier)
            ast = ("subspace", ref.text, carrier_ast)
        else:
            self.fail(f"unknown proximity kind {tok.text!r}", tok)
        self.bind("proximity", name, ast, value)

    def parse_seq(self):
        self.expect("seq")
        name = self.plain_name()
        self.expect("=")
        tok = self.next()
        if tok.text == "shrink_tail":
            self.expect("(")
            self.expect("core")
            self.expect("=")
            core_ast = self.parse_set_expr()
            self.expect(",")
            self.expect("tail")
            self.expect("=")
            tail_ast = self.parse_set_expr()
            self.expect(")")
            core, tail = self.resolve_set_group([core_ast, tail_ast], None, tok)
            value = SetSequence.shrink_tail(core, tail)
            ast = ("shrink_tail", core_ast, tail_ast)
        elif tok.text in ("prefixes", "constant", "interval_shrink"):
            self.expect("(")
            inner_ast = self.parse_set_expr()
            self.expect(")")
            inner = self.resolve_set(inner_ast, None)
            maker = {"prefixes": SetSequence.prefixes,
                     "constant": SetSequence.constant,
                     "interval_shrink": SetSequence.interval_shrink}[tok.text]
            value, ast = maker(inner), (tok.text, inner_ast)
        else:
            self.fail(f"unknown sequence kind {tok.text!r}", tok)
        self.bind("seq", name, ast, value)

    def parse_fn(self):
        self.expect("fn")
        name = self.plain_name()
        self.expect(":")
        dom = self.universe_arg()
        self.expect_kind("arrow")
        cod = self.universe_arg()
        self.expect("=")
        tok = self.next()
        if tok.text == "table":
            entries = self.parse_mapping_braces(cod)
            values = [entries[i] for i in sorted(entries)]
            if sorted(entries) != list(range(len(entries))):
                self.fail("table keys must run 0, 1, ... without gaps", tok)
            value, ast = FunctionSpec.table(dom, cod, values), ("table", tuple(values))
        elif tok.text == "residue_map":
            self.expect("(")
            self.expect("p")
            self.expect("=")
            period = int(self.expect_kind("number").text)
            self.expect(",")
            self.expect("values")
            self.expect("=")
            values = self.parse_mapping_braces(cod)
            exceptions = {}
            if self.accept(","):
                self.expect("exceptions")
                self.expect("=")
                exceptions = self.parse_mapping_braces(cod)
            self.expect(")")
            value = FunctionSpec.residue_map(dom, cod, period, values, exceptions)
            ast = ("residue_map", period, tuple(sorted(values.items())),
                   tuple(sorted(exceptions.items())))
        elif tok.text == "chi":
            self.expect("(")
            inner_ast = self.parse_set_expr()
            self.expect(")")
            inner = self.resolve_set(inner_ast, dom)
            value, ast = FunctionSpec.characteristic(dom, cod, inner), ("chi", inner_ast)
        elif tok.text == "decay":
            self.expect("(")
            inner_ast = self.parse_set_expr()
            power = 1
            if self.accept(","):
                self.expect("power")
                self.expect("=")
                power = int(self.expect_kind("number").text)
            self.expect(")")
            inner = self.resolve_set(inner_ast, dom)
            value = FunctionSpec.decay(dom, cod, inner, power=power)
            ast = ("decay", inner_ast, power)
        elif tok.text == "identity":
            if dom != cod:
                self.fail("identity needs equal domain and codomain", tok)
            value, ast = FunctionSpec.identity(dom), ("identity",)
        elif tok.text == "shift":
            self.expect("(")
            k = self.parse_signed_int()
            self.expect(")")
            value, ast = FunctionSpec.shift_map(dom, k), ("shift", k)
        else:
            self.fail(f"unknown function kind {tok.text!r}", tok)
        self.bind("fn", name, (dom, cod, ast), value)

    def parse_fnseq(self):
        self.expect("fnseq")
        name = self.plain_name()
        self.expect("=")
        tok = self.next()
        if tok.text not in ("powers", "constant"):
            self.fail(f"unknown function-sequence kind {tok.text!r}", tok)
        self.expect("(")
        ref = self.plain_name()
        fn = self.lookup(ref)
        if not isinstance(fn, FunctionSpec):
            self.fail(f"{ref.text} is not a function", ref)
        self.expect(")")
        maker = FunctionSequence.powers if tok.text == "powers" else FunctionSequence.constant
        self.bind("fnseq", name, (tok.text, ref.text), maker(fn))

    # -- commands ------------------------------------------------------------

    def parse_check(self):
        tok = self.next()  # check | find_counterexample
        law = self.expect_kind("ident").text
        kinds = None
        try:
            kinds = expected_kinds(law)
        except Exception:
            self.fail(f"unknown law {law!r}", tok)
        args = []
        for kind in kinds:
            ref = self.plain_name()
            value = self.lookup(ref)
            if subject_kind(value) != kind:
                self.fail(f"{law} wants a {kind} here, {ref.text} is a "
                          f"{subject_kind(value)}", ref)
            args.append(ref.text)
        self.commands.append(Command(tok.text, law, tuple(args), None, tok))

    def parse_stone(self):
        tok = self.expect("stone")
        ref = self.plain_name()
        value = self.lookup(ref)
        if not isinstance(value, SetAlgebra):
            self.fail(f"{ref.text} is not an algebra", ref)
        dot_path = None
        if self.peek().kind == "flag":
            flag = self.next()
            if flag.text != "--dot":
                self.fail(f"unknown flag {flag.text!r}", flag)
            dot_path = self.expect_kind("string").text[1:-1]
        self.commands.append(Command("stone", None, (ref.text,), dot_path, tok))

    def parse_report(self):
        tok = self.expect("report")
        self.commands.append(Command("report", None, (), None, tok))

    # -- set expressions ---------------------------------------------------------

    def parse_set_expr(self):
        node = self.parse_set_term()
        while self.peek().text in _SET_OPS:
            op_tok = self.next()
            right = self.parse_set_term()
            if op_tok.text in _UNION_OPS:
                op = "+"
            elif op_tok.text in _DIFF_OPS:
                op = "-"
            else:
                op = "&"
            node = BinOp(op, node, right)
        return node

    def parse_set_term(self):
        tok = self.peek()
        if tok.text == "{":
            return self.parse_braces()
        if tok.text in ("[", "("):
            # "(" opens either a grouped expression or a left-open interval;
            # interval endpoints are nonnegative, so a number follows the "("
            if tok.text == "(" and self.tokens[self.pos + 1].kind != "number":
                self.next()
                inner = self.parse_set_expr()
                self.expect(")")
                return inner
            return self.parse_interval()
        if tok.text == "periodic":
            return self.parse_periodic()
        if tok.text == "complement":
            self.next()
            self.expect("(")
            inner = self.parse_set_expr()
            self.expect(")")
            return ComplementExpr(inner)
        if tok.kind == "ident":
            self.next()
            return Ref(tok.text, tok)
        self.fail(f"expected a set, found {tok.text!r}", tok)

    def parse_braces(self) -> Braces:
        self.expect("{")
        elements = []
        if not self.accept("}"):
            while True:
                elements.append(self.parse_element())
                if self.accept("}"):
                    break
                self.expect(",")
        return Braces(tuple(elements))

    def parse_element(self):
        tok = self.peek()
        if tok.text == "inf":
            self.next()
            return INFINITY
        value = self.parse_rational()
        return value

    def parse_signed_int(self) -> int:
        sign = -1 if self.accept("-") else 1
        return sign * int(self.expect_kind("number").text)

    def parse_rational(self):
        sign = -1 if self.accept("-") else 1
        tok = self.expect_kind("number")
        num = int(tok.text)
        if self.peek().text == "/":
            self.next()
            den = int(self.expect_kind("number").text)
            return Fraction(sign * num, den)
        return sign * num

    def parse_periodic(self) -> PeriodicLit:
        self.expect("periodic")
        self.expect("(")
        self.expect("p")
        self.expect("=")
        period = int(self.expect_kind("number").text)
        self.expect(",")
        self.expect("residues")
        self.expect("=")
        self.expect("{")
        residues = []
        if not self.accept("}"):
            while True:
                residues.append(self.parse_signed_int())
                if self.accept("}"):
                    break
                self.expect(",")
        self.expect(")")
        return PeriodicLit(period, tuple(residues))

    def parse_interval(self) -> IntervalLit:
        open_tok = self.next()
        lo_closed = open_tok.text == "["
        lo = self.parse_rational()
        self.expect(",")
        hi = self.parse_rational()
        close_tok = self.next()
        if close_tok.text not in ("]", ")"):
            self.fail("an interval ends with ']' or ')'", close_tok)
        return IntervalLit(Fraction(lo), Fraction(hi), lo_closed, close_tok.text == "]")

    def parse_mapping_braces(self, codomain: Universe) -> dict:
        self.expect("{")
        out = {}
        if not self.accept("}"):
            while True:
                key = self.parse_signed_int()
                self.expect(":")
                out[key] = self.parse_value(codomain)
                if self.accept("}"):
                    break
                self.expect(",")
        return out

    def parse_value(self, codomain: Universe):
        if self.peek().text == "inf":
            self.next()
            return INFINITY
        value = self.parse_rational()
        if codomain.kind is UniverseKind.UNIT_INTERVAL:
            return Fraction(value)
        if isinstance(value, Fraction) and value.denominator != 1:
            self.fail("this codomain takes integer values")
        return int(value)

    # -- resolution ---------------------------------------------------------------

    def declared_universes(self) -> list[Universe]:
        return [v for v in self.env.values() if isinstance(v, Universe)]

    def resolve_set(self, ast, target: Universe | None) -> SymSet:
        if target is not None:
            return self.build_set(ast, target)
        inferred = self.infer_universe(ast)
        if inferred is not None:
            return self.build_set(ast, inferred)
        candidates = []
        for u in self.declared_universes():
            try:
                candidates.append((u, self.build_set(ast, u)))
            except Exception:
                continue
        if len(candidates) == 1:
            return candidates[0][1]
        tok = self.first_token(ast)
        if not candidates:
            self.fail("no declared universe can hold this set", tok)
        self.fail("ambiguous universe for this set, add 'in U'", tok)

    def build_algebra(self, asts, target: Universe | None, builder, tok):
        """Build an algebra, inferring the universe as the unique one where
        the construction (a partition, or generation) goes through."""
        if target is None:
            target = next((self.infer_universe(ast) for ast in asts
                           if self.infer_universe(ast) is not None), None)
        if target is not None:
            sets = [self.build_set(ast, target) for ast in asts]
            return builder(target, sets)
        outcomes = []
        for u in self.declared_universes():
            try:
                outcomes.append(builder(u, [self.build_set(ast, u) for ast in asts]))
            except Exception:
                continue
        if len(outcomes) == 1:
            return outcomes[0]
        if not outcomes:
            self.fail("no declared universe admits this algebra", tok)
        self.fail("ambiguous universe for this algebra, add 'in U'", tok)

    def resolve_set_group(self, asts, target: Universe | None, tok) -> list[SymSet]:
        if target is None:
            for ast in asts:
                target = self.infer_universe(ast)
                if target is not None:
                    break
        if target is not None:
            return [self.build_set(ast, target) for ast in asts]
        first = self.resolve_set(asts[0], None)
        return [first] + [self.build_set(ast, first.universe) for ast in asts[1:]]

    def infer_universe(self, ast) -> Universe | None:
        if isinstance(ast, Ref):
            value = self.lookup(ast.token)
            if not isinstance(value, SymSet):
                self.fail(f"{ast.name} is not a set", ast.token)
            return value.universe
        if isinstance(ast, (BinOp,)):
            return self.infer_universe(ast.left) or self.infer_universe(ast.right)
        if isinstance(ast, ComplementExpr):
            return self.infer_universe(ast.inner)
        if isinstance(ast, PeriodicLit):
            kinds = [u for u in self.declared_universes()
                     if u.kind is UniverseKind.INTEGERS]
            return kinds[0] if len(kinds) == 1 else None
        if isinstance(ast, IntervalLit):
            kinds = [u for u in self.declared_universes()
                     if u.kind is UniverseKind.UNIT_INTERVAL]
            return kinds[0] if len(kinds) == 1 else None
        return None

    def build_set(self, ast, universe: Universe) -> SymSet:
        if isinstance(ast, Ref):
            value = self.lookup(ast.token)
            if not isinstance(value, SymSet):
                self.fail(f"{ast.name} is not a set", ast.token)
            if value.universe != universe:
                self.fail(f"{ast.name} lives in a different universe", ast.token)
            return value
        if isinstance(ast, Braces):
            return SymSet.of(universe, ast.elements)
        if isinstance(ast, PeriodicLit):
            return SymSet.periodic(universe, ast.period, ast.residues)
        if isinstance(ast, IntervalLit):
            return SymSet.interval(universe, ast.lo, ast.hi, ast.lo_closed, ast.hi_closed)
        if isinstance(ast, ComplementExpr):
            return self.build_set(ast.inner, universe).complement()
        left = self.build_set(ast.left, universe)
        right = self.build_set(ast.right, universe)
        if ast.op == "+":
            return left | right
        if ast.op == "-":
            return left - right
        return left & right

    def first_token(self, ast) -> Token:
        if isinstance(ast, Ref):
            return ast.token
        if isinstance(ast, BinOp):
            return self.first_token(ast.left)
        if isinstance(ast, ComplementExpr):
            return self.first_token(ast.inner)
        return self.peek()


def parse(source: str) -> Program:
    return _Parser(source).parse()


def parse_set(text: str, universe: Universe) -> SymSet:
    """Parse one set expression against a fixed universe; used to feed
    rendered witnesses back into the engine."""
    parser = _Parser(text)
    ast = parser.parse_set_expr()
    if parser.peek().kind != "eof":
        parser.fail("trailing input after the set expression")
    return parser.build_set(ast, universe)


# ---------------------------------------------------------------------------
# rendering


def _render_element(x) -> str:
    return "inf" if x is INFINITY else str(x)


def render_set_ast(ast) -> str:
    if isinstance(ast, Ref):
        return ast.name
    if isinstance(ast, Braces):
        return "{" + ", ".join(_render_element(x) for x in ast.elements) + "}"
    if isinstance(ast, PeriodicLit):
        inner = ", ".join(str(r) for r in ast.residues)
        return f"periodic(p={ast.period}, residues={{{inner}}})"
    if isinstance(ast, IntervalLit):
        lo = "[" if ast.lo_closed else "("
        hi = "]" if ast.hi_closed else ")"
        return f"{lo}{ast.lo}, {ast.hi}{hi}"
    if isinstance(ast, ComplementExpr):
        return f"complement({render_set_ast(ast.inner)})"
    left, right = render_set_ast(ast.left), render_set_ast(ast.right)
    if isinstance(ast.right, BinOp):
        right = f"({right})"
    return f"{left} {ast.op} {right}"


def _render_value(v) -> str:
    return "inf" if v is INFINITY else str(v)


def render(program: Program) -> str:
    lines = []
    for d in program.decls:
        if d.kind == "universe":
            ast = d.ast
            if ast[0] == "finite":
                rhs = f"finite({ast[1]})"
            elif ast[0] == "integers":
                rhs = "integers with_infinity" if ast[1] else "integers"
            else:
                rhs = "unit_interval"
            lines.append(f"universe {d.name} = {rhs}")
        elif d.kind == "set":
            lines.append(f"set {d.name} = {render_set_ast(d.ast)}"
                         + (f" in {_universe_name(program, d.value.universe)}"
                            if _needs_universe_tag(program, d) else ""))
        elif d.kind == "algebra":
            ast = d.ast
            if ast[0] in ("atoms", "generated"):
                inner = ", ".join(render_set_ast(a) for a in ast[1])
                lines.append(f"algebra {d.name} = {ast[0]}({inner})")
            else:
                lines.append(f"algebra {d.name} = {ast[0]}"
                             f"({_universe_name(program, ast[1])})")
        elif d.kind == "proximity":
            ast = d.ast
            if ast[0] in ("discrete", "one_point", "metric"):
                lines.append(f"proximity {d.name} = {ast[0]}"
                             f"({_universe_name(program, ast[1])})")
            elif ast[0] == "from_algebra":
                lines.append(f"proximity {d.name} = from_algebra({ast[1]})")
            else:
                lines.append(f"proximity {d.name} = subspace({ast[1]}, "
                             f"{render_set_ast(ast[2])})")
        elif d.kind == "seq":
            ast = d.ast
            if ast[0] == "shrink_tail":
                lines.append(f"seq {d.name} = shrink_tail(core={render_set_ast(ast[1])}, "
                             f"tail={render_set_ast(ast[2])})")
            else:
                lines.append(f"seq {d.name} = {ast[0]}({render_set_ast(ast[1])})")
        elif d.kind == "fn":
            dom, cod, ast = d.ast
            dom_n, cod_n = _universe_name(program, dom), _universe_name(program, cod)
            if ast[0] == "table":
                inner = ", ".join(f"{i}: {_render_value(v)}" for i, v in enumerate(ast[1]))
                rhs = "table{" + inner + "}"
            elif ast[0] == "residue_map":
                vals = ", ".join(f"{k}: {_render_value(v)}" for k, v in ast[2])
                rhs = f"residue_map(p={ast[1]}, values={{{vals}}}"
                if ast[3]:
                    exc = ", ".join(f"{k}: {_render_value(v)}" for k, v in ast[3])
                    rhs += f", exceptions={{{exc}}}"
                rhs += ")"
            elif ast[0] == "chi":
                rhs = f"chi({render_set_ast(ast[1])})"
            elif ast[0] == "decay":
                rhs = f"decay({render_set_ast(ast[1])})" if ast[2] == 1 \
                    else f"decay({render_set_ast(ast[1])}, power={ast[2]})"
            elif ast[0] == "identity":
                rhs = "identity"
            else:
                rhs = f"shift({ast[1]})"
            lines.append(f"fn {d.name} : {dom_n} -> {cod_n} = {rhs}")
        elif d.kind == "fnseq":
            lines.append(f"fnseq {d.name} = {d.ast[0]}({d.ast[1]})")
    for c in program.commands:
        if c.kind == "report":
            lines.append("report")
        elif c.kind == "stone":
            line = f"stone {c.args[0]}"
            if c.dot_path is not None:
                line += f' --dot "{c.dot_path}"'
            lines.append(line)
        else:
            lines.append(f"{c.kind} {c.law} " + " ".join(c.args))
    return "\n".join(lines) + "\n"


def _universe_name(program: Program, universe: Universe) -> str:
    for d in program.decls:
        if d.kind == "universe" and d.value == universe:
            return d.name
    return repr(universe)


def _needs_universe_tag(program: Program, decl: Decl) -> bool:
    """Whether re-parsing this set declaration would be ambiguous without a tag."""
    parser = _Parser("")
    env = {}
    for d in program.decls:
        if d is decl:
            break
        env[d.name] = d.value
    parser.env = env
    try:
        rebuilt = parser.resolve_set(decl.ast, None)
        return rebuilt.universe != decl.value.universe
    except Exception:
        return True
