"""Parser for ``.vp`` proof scripts, a miniature SSReflect-like language.

A script is a sequence of ``Require`` lines and lemma blocks::

    Require Import mulmxA seqmx_of_mxK.
    Lemma foo : forall (n : nat), n = n.
    Proof. move=> n; by rewrite mulmxA. Qed.

Sentences end with a ``.`` followed by whitespace or end of input, so
qualified names such as ``Foo.bar`` stay single tokens. Comments are
``(* ... *)`` and nest.
"""

import json
import re
from dataclasses import dataclass, field

from .errors import CorpusFormatError, DuplicateLemma, ParseError

FAMILIES = ("move", "case", "elim", "apply", "rewrite", "exact", "by", "rest")
QUANTIFIERS = frozenset({"forall", "exists"})
KINDS = ("hypothesis", "lemma", "term")

GRAMMAR = r"""(* .vp proof-script grammar *)
file      ::= { require | lemma proof }
require   ::= 'Require' [ 'Import' | 'Export' ] ident { ident } '.'
lemma ::= 'Lemma' ident ':' statement '.'
proof     ::= 'Proof' '.' sentence { sentence } 'Qed' '.'
statement ::= token { token }
sentence  ::= component { ';' component } '.'
component ::= { bullet } ( 'by' [ component ] | tactic { arg } )
tactic    ::= ident
arg       ::= ident | number | '(' { token } ')' | punct
bullet    ::= '-' | '+' | '*' | '{' | '}'
token     ::= ident | number | punct | '(' { token } ')'
ident     ::= [ "'" | "\" ] letter { letter | digit | "_" | "'" } { '.' letter { letter | digit | "_" | "'" } }
number    ::= digit { digit }
punct     ::= '=>' | '->' | '<-' | '<->' | '//' | '/=' | ':=' | ':' | '=' | ',' | '/' | '-' | '+'
            | '*' | '!' | '?' | '|' | '[' | ']' | '{' | '}' | '<' | '>' | '@' | '&' | '~' | '^' | '%'
(* a sentence-ending '.' must be followed by whitespace or end of input *)
(* ';' and '.' inside parentheses do not split sentences or components *)
(* unknown tactic heads map to family 'rest' *)
"""


def grammar_ebnf():
    return GRAMMAR


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ident>[\\']?[A-Za-z_][A-Za-z0-9_']*(?:\.[A-Za-z_][A-Za-z0-9_']*)*)
  | (?P<number>\d+)
  | (?P<dot>\.)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<semi>;)
  | (?P<punct><->|=>|->|<-|//|/=|:=|[:=,/\-+*!?|\[\]{}<>@&~^%])
""", re.VERBOSE)

_IDENT_RE = re.compile(r"^[\\']?[A-Za-z_][A-Za-z0-9_']*(?:\.[A-Za-z_][A-Za-z0-9_']*)*$")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int


@dataclass(frozen=True)
class Arg:
    kind: str
    text: str


@dataclass(frozen=True)
class Atom:
    family: str
    args: tuple = ()


@dataclass(frozen=True)
class TacticStep:
    atoms: tuple


@dataclass(frozen=True)
class LemmaScript:
    name: str
    statement: tuple
    steps: tuple
    origin: tuple = field(default=("", 0), compare=False)

    def statement_text(self):
        return join_tokens(self.statement)


@dataclass(frozen=True)
class Corpus:
    lemmas: tuple = ()
    source_files: tuple = ()

    def names(self):
        return [lem.name for lem in self.lemmas]

    def __len__(self):
        return len(self.lemmas)


def is_ident(text):
    return bool(_IDENT_RE.match(text))


def strip_comments(text, file="<input>"):
    """Blank out ``(* ... *)`` comments, keeping newlines for line numbers."""
    out = []
    depth = 0
    i = 0
    line = 1
    start_line = 1
    while i < len(text):
        two = text[i:i + 2]
        if two == "(*":
            if depth == 0:
                start_line = line
            depth += 1
            out.append("  ")
            i += 2
        elif two == "*)" and depth:
            depth -= 1
            out.append("  ")
            i += 2
        else:
            ch = text[i]
            if ch == "\n":
                line += 1
                out.append(ch)
            else:
                out.append(" " if depth else ch)
            i += 1
    if depth:
        raise ParseError(file, start_line, "unterminated comment")
    return "".join(out)


def tokenize(text, file="<input>"):
    text = strip_comments(text, file)
    tokens = []
    pos, line = 0, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(file, line, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line))
        line += m.group().count("\n")
        pos = m.end()
    return tokens


def join_tokens(tokens):
    out = ""
    for tok in tokens:
        if out and not out.endswith("(") and tok not in (")", ","):
            out += " "
        out += tok
    return out


def statement_tree(tokens):
    """Nest a flat statement token list on its parentheses."""
    stack = [[]]
    for tok in tokens:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            inner = stack.pop()
            stack[-1].append(inner)
        else:
            stack[-1].append(tok)
    return stack[0]


def bound_names(statement):
    """Names bound by leading ``forall``/``exists`` binders."""
    names = set()
    toks = list(statement)
    i = 0
    while i < len(toks):
        if toks[i] not in QUANTIFIERS:
            i += 1
            continue
        i += 1
        depth = 0
        pending = []
        while i < len(toks):
            t = toks[i]
            if t == "(":
                depth += 1
                pending = []
            elif t == ")":
                depth -= 1
            elif t == ":" and pending is not None:
                names.update(pending)
                pending = None
            elif t == "," and depth == 0:
                if pending:
                    names.update(pending)
                i += 1
                break
            elif pending is not None and is_ident(t):
                pending.append(t)
            i += 1
    return names


def head_symbol(statement):
    """First identifier after any leading quantifier prefix."""
    toks = list(statement)
    i = 0
    while i < len(toks) and toks[i] in QUANTIFIERS:
        depth = 0
        while i < len(toks) and not (toks[i] == "," and depth == 0):
            depth += (toks[i] == "(") - (toks[i] == ")")
            i += 1
        i += 1
    for t in toks[i:] or toks:
        if is_ident(t) and t not in QUANTIFIERS:
            return t
    return None


class _Parser:
    def __init__(self, file, tokens, known):
        self.file = file
        self.toks = tokens
        self.i = 0
        self.known = known
        self.imports = set()

    def peek(self, offset=0):
        j = self.i + offset
        return self.toks[j] if j < len(self.toks) else None

    def error(self, message, tok=None):
        tok = tok or self.peek() or (self.toks[-1] if self.toks else None)
        raise ParseError(self.file, tok.line if tok else 1, message)

    def at_keyword(self, word):
        t = self.peek()
        return t is not None and t.kind == "ident" and t.text == word

    def expect_keyword(self, word, message):
        if not self.at_keyword(word) or not self._dot_at(1):
            self.error(message)
        self.i += 2

    def _dot_at(self, offset):
        t = self.peek(offset)
        return t is not None and t.kind == "dot"

    def sentence(self, start):
        """Tokens up to the next top-level dot; the dot is consumed."""
        depth = 0
        out = []
        while True:
            t = self.peek()
            if t is None:
                if depth:
                    self.error("unbalanced parentheses: '(' never closed", start)
                return None
            self.i += 1
            if t.kind == "lparen":
                depth += 1
            elif t.kind == "rparen":
                depth -= 1
                if depth < 0:
                    self.error("unbalanced parentheses: unexpected ')'", t)
            elif t.kind == "dot" and depth == 0:
                return out
            out.append(t)

    def parse(self):
        while self.peek() is not None:
            t = self.peek()
            if self.at_keyword("Require"):
                self.parse_require()
            elif self.at_keyword("Lemma"):
                lem = self.parse_lemma()
                if lem.name in self.known:
                    raise DuplicateLemma(lem.name)
                # later lemmas may cite this one
                self.known.add(lem.name)
                yield lem
            else:
                self.error(f"expected 'Lemma' or 'Require', found {t.text!r}")

    def parse_require(self):
        start = self.peek()
        self.i += 1
        body = self.sentence(start)
        if body is None:
            self.error("unterminated Require", start)
        names = [t.text for t in body if t.kind == "ident" and t.text not in ("Import", "Export")]
        if not names or any(t.kind != "ident" for t in body):
            self.error("Require expects a list of identifiers", start)
        self.imports.update(names)

    def parse_lemma(self):
        start = self.peek()
        self.i += 1
        name_tok = self.peek()
        if name_tok is None or name_tok.kind != "ident":
            self.error("expected lemma name after 'Lemma'", name_tok)
        colon = self.peek(1)
        if colon is None or colon.text != ":":
            self.error("expected ':' after lemma name", colon)
        self.i += 2
        stmt = self.sentence(start)
        if stmt is None:
            self.error(f"lemma {name_tok.text!r}: statement is not terminated by '.'", start)
        if not stmt:
            self.error(f"lemma {name_tok.text!r}: empty statement", start)
        statement = tuple(t.text for t in stmt)
        self.expect_keyword("Proof", f"lemma {name_tok.text!r}: missing 'Proof.'")
        bound = bound_names(statement)
        steps = []
        while True:
            if self.at_keyword("Qed") and self._dot_at(1):
                self.i += 2
                break
            if self.peek() is None or self.at_keyword("Lemma") or self.at_keyword("Require"):
                self.error(f"lemma {name_tok.text!r}: missing 'Qed.'", start)
            sent_start = self.peek()
            body = self.sentence(sent_start)
            if body is None:
                self.error(f"lemma {name_tok.text!r}: missing 'Qed.'", start)
            if not body:
                self.error("empty tactic sentence", sent_start)
            steps.append(self.parse_step(body, bound))
        if not steps:
            self.error(f"lemma {name_tok.text!r}: empty proof", start)
        return LemmaScript(name_tok.text, statement, tuple(steps), (self.file, start.line))

    def parse_step(self, body, bound):
        components = [[]]
        depth = 0
        for t in body:
            if t.kind == "lparen":
                depth += 1
            elif t.kind == "rparen":
                depth -= 1
            if t.kind == "semi" and depth == 0:
                components.append([])
            else:
                components[-1].append(t)
        atoms = []
        for comp in components:
            if not comp:
                self.error("empty tactic between ';'", body[0])
            atoms.extend(self.parse_component(comp, bound))
        return TacticStep(tuple(atoms))

    def parse_component(self, toks, bound):
        i = 0
        while i < len(toks) and toks[i].kind == "punct" and toks[i].text in "-+*{}":
            i += 1
        toks = toks[i:]
        if not toks:
            return []
        head = toks[0]
        if head.kind != "ident":
            self.error(f"expected a tactic, found {head.text!r}", head)
        rest = toks[1:]
        if head.text == "by" and rest and rest[0].kind == "ident":
            return [Atom("by")] + self.parse_component(rest, bound)
        family = head.text if head.text in FAMILIES else "rest"
        return [Atom(family, tuple(self.parse_args(rest, bound)))]

    def parse_args(self, toks, bound):
        args = []
        i = 0
        while i < len(toks):
            t = toks[i]
            if t.kind == "lparen":
                depth, j = 0, i
                while True:
                    depth += (toks[j].kind == "lparen") - (toks[j].kind == "rparen")
                    if depth == 0:
                        break
                    j += 1
                args.append(Arg("term", join_tokens([x.text for x in toks[i:j + 1]])))
                i = j + 1
                continue
            if t.kind == "ident":
                args.append(Arg(self.classify(t.text, bound), t.text))
            elif t.kind == "number":
                args.append(Arg("term", t.text))
            i += 1
        return args

    def classify(self, name, bound):
        if name in self.known or name in self.imports:
            return "lemma"
        if name in bound:
            return "hypothesis"
        return "term"


def parse_corpus(sources):
    """Parse ``(file_name, text)`` pairs, in order, into one corpus.

    Lemma names declared in earlier files count as lemma references in
    later ones; ``Require`` imports are scoped to their file.
    """
    lemmas = []
    declared = set()
    files = []
    for name, text in sources:
        files.append(name)
        lemmas.extend(_Parser(name, tokenize(text, name), declared).parse())
    return Corpus(tuple(lemmas), tuple(files))


def format_lemma(lem):
    lines = [f"Lemma {lem.name} : {join_tokens(lem.statement)}.", "Proof."]
    for step in lem.steps:
        parts = []
        for atom in step.atoms:
            parts.append(" ".join([atom.family] + [a.text for a in atom.args]))
        lines.append("  " + "; ".join(parts) + ".")
    lines.append("Qed.")
    return "\n".join(lines) + "\n"


def format_corpus(corpus):
    """Render a corpus back to source text.

    Lemma references that the corpus does not declare itself are
    re-imported just before their first use.
    """
    out = []
    declared = set()
    imported = set()
    for lem in corpus.lemmas:
        refs = [a.text for s in lem.steps for at in s.atoms for a in at.args
                if a.kind == "lemma" and a.text not in declared and a.text not in imported]
        refs = list(dict.fromkeys(refs))
        if refs:
            out.append(f"Require Import {' '.join(refs)}.\n")
            imported.update(refs)
        out.append(format_lemma(lem))
        declared.add(lem.name)
    return "".join(out)


def corpus_to_json(corpus):
    return {
        "files": list(corpus.source_files),
        "lemmas": [
            {
                "name": lem.name,
                "statement": list(lem.statement),
                "steps": [[{"family": a.family,
                            "args": [{"kind": g.kind, "text": g.text} for g in a.args]}
                           for a in step.atoms] for step in lem.steps],
            }
            for lem in corpus.lemmas
        ],
    }


def corpus_from_json(obj):
    try:
        lemmas = []
        seen = set()
        for entry in obj["lemmas"]:
            name = entry["name"]
            if not isinstance(name, str) or not is_ident(name):
                raise CorpusFormatError(f"bad lemma name {name!r}")
            if name in seen:
                raise DuplicateLemma(name)
            seen.add(name)
            statement = tuple(entry["statement"])
            if not statement or not all(isinstance(t, str) for t in statement):
                raise CorpusFormatError(f"lemma {name}: statement must be non-empty tokens")
            steps = []
            for step in entry["steps"]:
                atoms = []
                for a in step:
                    if a["family"] not in FAMILIES:
                        raise CorpusFormatError(f"lemma {name}: unknown family {a['family']!r}")
                    args = []
                    for g in a["args"]:
                        if g["kind"] not in KINDS or not isinstance(g["text"], str):
                            raise CorpusFormatError(f"lemma {name}: bad argument {g!r}")
                        args.append(Arg(g["kind"], g["text"]))
                    atoms.append(Atom(a["family"], tuple(args)))
                if not atoms:
                    raise CorpusFormatError(f"lemma {name}: empty step")
                steps.append(TacticStep(tuple(atoms)))
            if not steps:
                raise CorpusFormatError(f"lemma {name}: empty proof")
            lemmas.append(LemmaScript(name, statement, tuple(steps)))
        return Corpus(tuple(lemmas), tuple(obj.get("files", ())))
    except (KeyError, TypeError, AttributeError) as exc:
        raise CorpusFormatError(f"malformed corpus JSON: {exc!r}") from exc


def dumps_corpus(corpus):
    return json.dumps(corpus_to_json(corpus), indent=1) + "\n"


def loads_corpus(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise CorpusFormatError("corpus JSON must be an object")
    return corpus_from_json(obj)
