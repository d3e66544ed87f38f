"""The ``.lsawfp`` text format: parser, canonical printer and model compilation.

Example::

    process PeerReview
    sorts A B C D S1* E1 E2 F G1 G2 H1 H2 I1 I2
    axioms A
    productions
      A -> B ; D
      S1 -> E1 || E2
      B -> .   D -> .
    actors EC AE R1 R2
    accredit EC r={A,B,C,D,H1,H2,I1,I2,F} w={A,B,D} x={C}
    policy nominal
      choose A P2
      choose E1@1 P5
      status A "accepted"

``;`` is sequential, ``||`` parallel, ``.`` epsilon, ``*`` marks a
restructuring sort and ``#`` starts a comment. Productions without an
explicit ``ID:`` prefix are numbered ``P1, P2, ...`` by position.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional

from lsawfp.errors import DuplicateDeclaration, SpecSyntaxError, UnresolvedReference
from lsawfp.model import (
    GMAWfP,
    GMWf,
    Accreditation,
    Mode,
    Production,
    Sort,
    SortKind,
)
from lsawfp.simulator import Policy

KEYWORDS = frozenset(
    {"process", "sorts", "axioms", "productions", "actors", "accredit", "policy", "choose", "status"}
)


@dataclass(frozen=True)
class SortDecl:
    name: str
    restructuring: bool = False
    line: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ProductionDecl:
    id: str
    lhs: str
    rhs: tuple[str, ...] = ()
    mode: Mode = Mode.SEQ
    line: Optional[int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.rhs) <= 1:
            object.__setattr__(self, "mode", Mode.SEQ)


@dataclass(frozen=True)
class AccreditDecl:
    actor: str
    r: tuple[str, ...] = ()
    w: tuple[str, ...] = ()
    x: tuple[str, ...] = ()
    line: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ChoiceDecl:
    sort: str
    occurrence: Optional[int]
    production: str
    line: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class StatusDecl:
    sort: str
    text: str
    line: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class PolicyDecl:
    name: str
    choices: tuple[ChoiceDecl, ...] = ()
    statuses: tuple[StatusDecl, ...] = ()
    line: Optional[int] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SpecDocument:
    name: str
    sorts: tuple[SortDecl, ...] = ()
    axioms: tuple[str, ...] = ()
    productions: tuple[ProductionDecl, ...] = ()
    actors: tuple[str, ...] = ()
    accreditations: tuple[AccreditDecl, ...] = ()
    policies: tuple[PolicyDecl, ...] = ()

    def policy(self, name: str) -> PolicyDecl:
        for p in self.policies:
            if p.name == name:
                return p
        raise KeyError(name)


# -- lexing ----------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<arrow>->)
  | (?P<par>\|\|)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<int>\d+)
  | (?P<punct>[;.*={},:@])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex(line: str, lineno: int) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m:
            raise SpecSyntaxError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        if kind == "comment":
            break
        if kind != "ws":
            text = m.group()
            if kind == "punct":
                kind = text
            elif kind == "par":
                kind = "||"
            elif kind == "arrow":
                kind = "->"
            toks.append(_Tok(kind, text, lineno, pos + 1))
        pos = m.end()
    return toks


class _Cursor:
    def __init__(self, toks: list[_Tok], lineno: int, line: str):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.end_col = len(line.rstrip()) + 1

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def at_end(self) -> bool:
        return self.i >= len(self.toks)

    def take(self, kind: str, what: str = "") -> _Tok:
        tok = self.peek()
        if tok is None:
            raise SpecSyntaxError(f"expected {what or kind} at end of line", self.lineno, self.end_col)
        if tok.kind != kind:
            raise SpecSyntaxError(f"expected {what or kind}, found {tok.text!r}", tok.line, tok.col)
        self.i += 1
        return tok

    def accept(self, kind: str) -> Optional[_Tok]:
        tok = self.peek()
        if tok is not None and tok.kind == kind:
            self.i += 1
            return tok
        return None

    def ident(self, what: str) -> _Tok:
        tok = self.take("ident", what)
        if tok.text in KEYWORDS:
            raise SpecSyntaxError(f"keyword {tok.text!r} cannot be used as {what}", tok.line, tok.col)
        return tok

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise SpecSyntaxError(f"unexpected {tok.text!r}", tok.line, tok.col)


# -- parsing ----------------------------------------------------------------------------


class _Parser:
    def __init__(self):
        self.name: Optional[str] = None
        self.name_line = 0
        self.sorts: list[SortDecl] = []
        self.sort_pos: dict[str, _Tok] = {}
        self.axioms: list[_Tok] = []
        self.prods: list[tuple[Optional[_Tok], _Tok, list[_Tok], Mode]] = []
        self.actors: list[_Tok] = []
        self.accs: list[tuple[_Tok, dict[str, list[_Tok]]]] = []
        self.policies: list[tuple[_Tok, list, list]] = []
        self.block: Optional[str] = None

    def line(self, cur: _Cursor) -> None:
        head = cur.peek()
        if head.kind == "ident" and head.text in KEYWORDS - {"choose", "status"}:
            cur.i += 1
            getattr(self, "kw_" + head.text)(cur, head)
            return
        if self.block == "productions":
            while not cur.at_end():
                self.production(cur)
        elif self.block is not None and self.block.startswith("policy"):
            self.policy_line(cur)
        else:
            raise SpecSyntaxError(f"unexpected {head.text!r} outside any section", head.line, head.col)

    def kw_process(self, cur: _Cursor, kw: _Tok) -> None:
        if self.name is not None:
            raise DuplicateDeclaration("process declared twice", kw.line, kw.col)
        self.name = cur.take("ident", "process name").text
        self.name_line = kw.line
        cur.done()
        self.block = None

    def kw_sorts(self, cur: _Cursor, kw: _Tok) -> None:
        while not cur.at_end():
            tok = cur.ident("sort name")
            star = cur.accept("*") is not None
            if tok.text in self.sort_pos:
                raise DuplicateDeclaration(f"sort {tok.text} declared twice", tok.line, tok.col)
            self.sort_pos[tok.text] = tok
            self.sorts.append(SortDecl(tok.text, star, tok.line))
        self.block = None

    def kw_axioms(self, cur: _Cursor, kw: _Tok) -> None:
        while not cur.at_end():
            tok = cur.ident("axiom")
            if any(a.text == tok.text for a in self.axioms):
                raise DuplicateDeclaration(f"axiom {tok.text} listed twice", tok.line, tok.col)
            self.axioms.append(tok)
        self.block = None

    def kw_productions(self, cur: _Cursor, kw: _Tok) -> None:
        self.block = "productions"
        while not cur.at_end():
            self.production(cur)

    def production(self, cur: _Cursor) -> None:
        pid = None
        first = cur.ident("production left-hand side")
        if cur.accept(":"):
            pid, lhs = first, cur.ident("production left-hand side")
        else:
            lhs = first
        cur.take("->", "'->'")
        if cur.accept("."):
            self.prods.append((pid, lhs, [], Mode.SEQ))
            return
        rhs = [cur.ident("sort name")]
        mode: Optional[Mode] = None
        while not cur.at_end():
            tok = cur.peek()
            if tok.kind in (";", "||"):
                this = Mode.SEQ if tok.kind == ";" else Mode.PAR
                if mode is not None and this is not mode:
                    raise SpecSyntaxError(
                        "a production cannot mix ';' and '||' (introduce a restructuring sort)",
                        tok.line,
                        tok.col,
                    )
                mode = this
                cur.i += 1
                rhs.append(cur.ident("sort name"))
            else:
                raise SpecSyntaxError(f"expected ';' or '||', found {tok.text!r}", tok.line, tok.col)
        self.prods.append((pid, lhs, rhs, mode or Mode.SEQ))

    def kw_actors(self, cur: _Cursor, kw: _Tok) -> None:
        while not cur.at_end():
            tok = cur.ident("actor name")
            if any(a.text == tok.text for a in self.actors):
                raise DuplicateDeclaration(f"actor {tok.text} declared twice", tok.line, tok.col)
            self.actors.append(tok)
        self.block = None

    def kw_accredit(self, cur: _Cursor, kw: _Tok) -> None:
        actor = cur.ident("actor name")
        if any(a.text == actor.text for a, _ in self.accs):
            raise DuplicateDeclaration(
                f"actor {actor.text} accredited twice", actor.line, actor.col
            )
        rights: dict[str, list[_Tok]] = {}
        while not cur.at_end():
            key = cur.take("ident", "r, w or x")
            if key.text not in ("r", "w", "x"):
                raise SpecSyntaxError(f"expected r, w or x, found {key.text!r}", key.line, key.col)
            if key.text in rights:
                raise DuplicateDeclaration(f"{key.text}= given twice", key.line, key.col)
            cur.take("=", "'='")
            cur.take("{", "'{'")
            items: list[_Tok] = []
            if not cur.accept("}"):
                items.append(cur.ident("sort name"))
                while cur.accept(","):
                    items.append(cur.ident("sort name"))
                cur.take("}", "'}'")
            rights[key.text] = items
        self.accs.append((actor, rights))
        self.block = None

    def kw_policy(self, cur: _Cursor, kw: _Tok) -> None:
        name = cur.ident("policy name")
        cur.done()
        if any(p.text == name.text for p, _, _ in self.policies):
            raise DuplicateDeclaration(f"policy {name.text} declared twice", name.line, name.col)
        self.policies.append((name, [], []))
        self.block = "policy"

    def policy_line(self, cur: _Cursor) -> None:
        _, choices, statuses = self.policies[-1]
        head = cur.take("ident", "'choose' or 'status'")
        if head.text == "choose":
            sort = cur.ident("sort name")
            occ = None
            if cur.accept("@"):
                occ = int(cur.take("int", "occurrence index").text)
            pid = cur.take("ident", "production id")
            cur.done()
            choices.append((sort, occ, pid))
        elif head.text == "status":
            sort = cur.ident("sort name")
            text = cur.take("string", "quoted status text")
            cur.done()
            statuses.append((sort, json.loads(text.text)))
        else:
            raise SpecSyntaxError(
                f"expected 'choose' or 'status', found {head.text!r}", head.line, head.col
            )

    # -- resolution --------------------------------------------------------------

    def sort_ref(self, tok: _Tok, what: str) -> str:
        if tok.text not in self.sort_pos:
            raise UnresolvedReference(f"{what} refers to undeclared sort {tok.text}", tok.line, tok.col)
        return tok.text

    def finish(self) -> SpecDocument:
        if self.name is None:
            raise SpecSyntaxError("missing 'process NAME' line", 1, 1)
        axioms = tuple(self.sort_ref(t, "axiom list") for t in self.axioms)

        prods: list[ProductionDecl] = []
        ids: dict[str, _Tok] = {}
        for i, (pid_tok, lhs, rhs, mode) in enumerate(self.prods, 1):
            pid = pid_tok.text if pid_tok else f"P{i}"
            where = pid_tok or lhs
            if pid in ids:
                raise DuplicateDeclaration(f"production id {pid} used twice", where.line, where.col)
            ids[pid] = where
            prods.append(
                ProductionDecl(
                    pid,
                    self.sort_ref(lhs, f"production {pid}"),
                    tuple(self.sort_ref(t, f"production {pid}") for t in rhs),
                    mode,
                    lhs.line,
                )
            )

        actor_names = {a.text for a in self.actors}
        accs = []
        for actor, rights in self.accs:
            if actor.text not in actor_names:
                raise UnresolvedReference(
                    f"accreditation for undeclared actor {actor.text}", actor.line, actor.col
                )
            sets = {
                k: tuple(self.sort_ref(t, f"accreditation of {actor.text}") for t in rights.get(k, ()))
                for k in ("r", "w", "x")
            }
            accs.append(AccreditDecl(actor.text, sets["r"], sets["w"], sets["x"], actor.line))

        policies = []
        for name, choices, statuses in self.policies:
            cds = []
            for sort, occ, pid in choices:
                if pid.text not in ids:
                    raise UnresolvedReference(
                        f"policy {name.text} chooses unknown production {pid.text}", pid.line, pid.col
                    )
                cds.append(ChoiceDecl(self.sort_ref(sort, f"policy {name.text}"), occ, pid.text, sort.line))
            sds = tuple(
                StatusDecl(self.sort_ref(s, f"policy {name.text}"), text, s.line) for s, text in statuses
            )
            policies.append(PolicyDecl(name.text, tuple(cds), sds, name.line))

        return SpecDocument(
            self.name,
            tuple(self.sorts),
            axioms,
            tuple(prods),
            tuple(a.text for a in self.actors),
            tuple(accs),
            tuple(policies),
        )


def parse_spec(text: str) -> SpecDocument:
    """Parse ``.lsawfp`` source; errors carry 1-based line and column."""
    parser = _Parser()
    for lineno, line in enumerate(text.split("\n"), 1):
        toks = _lex(line, lineno)
        if toks:
            parser.line(_Cursor(toks, lineno, line))
    return parser.finish()


# -- printing ----------------------------------------------------------------------------


def _default_ids(doc: SpecDocument) -> bool:
    return all(p.id == f"P{i}" for i, p in enumerate(doc.productions, 1))


def print_spec(doc: SpecDocument) -> str:
    """Canonical text for ``doc``; ``parse_spec(print_spec(doc)) == doc``."""
    out = [f"process {doc.name}"]
    if doc.sorts:
        out.append("sorts " + " ".join(s.name + ("*" if s.restructuring else "") for s in doc.sorts))
    if doc.axioms:
        out.append("axioms " + " ".join(doc.axioms))
    if doc.productions:
        out.append("productions")
        show_ids = not _default_ids(doc)
        for p in doc.productions:
            prefix = f"{p.id}: " if show_ids else ""
            body = " . " if not p.rhs else f" {p.mode.symbol} ".join(p.rhs)
            out.append(f"  {prefix}{p.lhs} -> {body.strip()}")
    if doc.actors:
        out.append("actors " + " ".join(doc.actors))
    for acc in doc.accreditations:
        sets = " ".join(f"{k}={{{','.join(getattr(acc, k))}}}" for k in ("r", "w", "x"))
        out.append(f"accredit {acc.actor} {sets}")
    for pol in doc.policies:
        out.append(f"policy {pol.name}")
        for c in pol.choices:
            occ = "" if c.occurrence is None else f"@{c.occurrence}"
            out.append(f"  choose {c.sort}{occ} {c.production}")
        for s in pol.statuses:
            out.append(f"  status {s.sort} {json.dumps(s.text, ensure_ascii=False)}")
    return "\n".join(out) + "\n"


# -- model conversion ----------------------------------------------------------------------


def to_gmwf(doc: SpecDocument, checked: bool = True) -> GMWf:
    sorts = tuple(
        Sort(s.name, SortKind.RESTRUCTURING if s.restructuring else SortKind.TASK) for s in doc.sorts
    )
    prods = tuple(Production(p.id, p.lhs, p.rhs, p.mode) for p in doc.productions)
    if checked:
        return GMWf(sorts, prods, doc.axioms)
    return GMWf.unchecked(sorts, prods, doc.axioms)


def to_gmawfp(doc: SpecDocument, checked: bool = True) -> GMAWfP:
    g = to_gmwf(doc, checked)
    if checked:
        accs = tuple(Accreditation(a.actor, a.r, a.w, a.x) for a in doc.accreditations)
        return GMAWfP(g, doc.actors, accs)
    accs = tuple(Accreditation.unchecked(a.actor, a.r, a.w, a.x) for a in doc.accreditations)
    return GMAWfP.unchecked(g, doc.actors, accs)


def to_policy(decl: PolicyDecl) -> Policy:
    return Policy(
        {(c.sort, c.occurrence): c.production for c in decl.choices},
        {s.sort: s.text for s in decl.statuses},
    )


def from_model(
    name: str,
    g: GMWf,
    model: Optional[GMAWfP] = None,
    policies: dict[str, Policy] | None = None,
) -> SpecDocument:
    sorts = tuple(SortDecl(s.name, not s.is_task) for s in g.sorts)
    prods = tuple(ProductionDecl(p.id, p.lhs, p.rhs, p.mode) for p in g.productions)
    actors: tuple[str, ...] = ()
    accs: tuple[AccreditDecl, ...] = ()
    if model is not None:
        actors = model.actors
        accs = tuple(AccreditDecl(a.actor, a.r, a.w, a.x) for a in model.accreditations)
    pols = tuple(
        PolicyDecl(
            pname,
            tuple(ChoiceDecl(s, occ, pid) for (s, occ), pid in pol.choices.items()),
            tuple(StatusDecl(s, t) for s, t in pol.status_writer.items()),
        )
        for pname, pol in (policies or {}).items()
    )
    return SpecDocument(name, sorts, g.axioms, prods, actors, accs, pols)
