"""ASP-Core-2 emission of an instance plus the clingo program, and parsing of
answer sets printed by an external ASP system.

Nothing here runs a solver; the CLI or test harness does that.
"""
from __future__ import annotations

import enum
import re

from .graph import Dag, MalformedGraphError
from .instance import Instance
from .projection import PairLabel
from .solver import SolutionSet, Status

LISTING = (
    "{edge(X,Y)} :- node(X), node(Y).",
    ":- edge(X,Y), X = Y.",
    ":- edge(X,Y), nedge(X,Y,T), varin(T,X), varin(T,Y).",
    ":- edge(X,Y), path(Y,X).",
    "path(Y,X) :- edge(Y,X).",
    "path(Y,X) :- edge(Y,Z), path(Z,X).",
    "directed(X,Y,T) :- edge(X,Y), varin(T,Y).",
    "directed(X,Y,T) :- edge(X,Z), directed(Z,Y,T), not varin(T,Z).",
    "causalconn(X,Y,T) :- directed(X,Y,T).",
    "causalconn(X,Y,T) :- directed(Z,X,T), directed(Z,Y,T), not varin(T,Z).",
    "bidirected(X,Y,T) :- causalconn(X,Y,T), not directed(X,Y,T).",
    ":- nedge(X,Y,T), causalconn(X,Y,T), varin(T,X), varin(T,Y).",
    ":- edge(X,Y,T), not directed(X,Y,T), varin(T,X), varin(T,Y).",
    "#show edge/2.",
)

# input bidirected facts: no latent-directed path either way, and a common cause
BIDIRECTED_CONSTRAINTS = (
    ":- bidirected(X,Y,T), directed(X,Y,T).",
    ":- bidirected(X,Y,T), not causalconn(X,Y,T).",
)


class EmitMode(enum.Enum):
    STRICT_LISTING = "strict"
    AUGMENTED = "augmented"


class AnswerSetParseError(ValueError):
    def __init__(self, msg, line_no=None):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {msg}" if line_no is not None else msg)


def emit_facts(inst: Instance) -> list[str]:
    varin, edge, bidir, nedge = [], [], [], []
    for tag, t in enumerate(inst.inputs):
        varin.extend((tag, x) for x in t.vars)
        for (a, b), lab in t.labels.items():
            if lab is PairLabel.FORWARD:
                edge.append((tag, a, b))
            elif lab is PairLabel.BACKWARD:
                edge.append((tag, b, a))
            elif lab is PairLabel.BIDIRECTED:
                bidir.extend([(tag, a, b), (tag, b, a)])
            else:
                nedge.extend([(tag, a, b), (tag, b, a)])
    lines = [f"#const n={inst.n - 1}.", "node(0..n)."]
    lines += [f"varin({t},{x})." for t, x in sorted(varin)]
    lines += [f"edge({x},{y},{t})." for t, x, y in sorted(edge)]
    lines += [f"bidirected({x},{y},{t})." for t, x, y in sorted(bidir)]
    lines += [f"nedge({x},{y},{t})." for t, x, y in sorted(nedge)]
    return lines


def emit_program(inst: Instance, mode: EmitMode = EmitMode.AUGMENTED) -> str:
    """Full program text: instance facts, the rule block, and (augmented mode)
    the two constraints binding input bidirected facts."""
    lines = emit_facts(inst) + list(LISTING)
    if EmitMode(mode) is EmitMode.AUGMENTED:
        lines += list(BIDIRECTED_CONSTRAINTS)
    return "\n".join(lines) + "\n"


_ATOM = re.compile(r"edge\((\d+),(\d+)\)\Z")
_STATUS = {
    "SATISFIABLE": Status.COMPLETE,
    "OPTIMUM FOUND": Status.COMPLETE,
    "UNSATISFIABLE": Status.UNSATISFIABLE,
    "UNKNOWN": Status.TIMED_OUT,
}


def parse_answer_sets(text: str, n: int) -> SolutionSet:
    """Read ``Answer: k`` blocks of ``edge(i,j)`` atoms into a SolutionSet."""
    lines = text.splitlines()
    graphs = []
    status = None
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        if line.startswith("Answer:"):
            if i + 1 >= len(lines):
                raise AnswerSetParseError("answer header without a model line", i + 1)
            model_no = i + 2
            edges = []
            for tok in lines[i + 1].split():
                m = _ATOM.match(tok)
                if not m:
                    raise AnswerSetParseError(f"unparseable atom {tok!r}", model_no)
                a, b = int(m.group(1)), int(m.group(2))
                if a >= n or b >= n:
                    raise AnswerSetParseError(f"atom {tok} out of range for {n} nodes", model_no)
                edges.append((a, b))
            try:
                graphs.append(Dag.from_edges(n, edges))
            except (MalformedGraphError, ValueError) as exc:
                raise AnswerSetParseError(str(exc), model_no) from None
            i += 2
            continue
        if line in _STATUS:
            status = _STATUS[line]
        i += 1
    if status is None:
        if not graphs:
            raise AnswerSetParseError("no answer sets and no result status found")
        status = Status.COMPLETE
    if status is Status.COMPLETE and not graphs:
        status = Status.UNSATISFIABLE
    return SolutionSet.from_dags(n, graphs, status)
