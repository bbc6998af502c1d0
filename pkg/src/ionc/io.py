"""JSON documents for instances, solution sets and single graphs.

Files refer to variables by name.  In an instance file every co-measured pair
that is not listed as directed or bidirected is absent.

Instance::

    {"variables": ["X", "Y", "Z"],
     "inputs": [{"vars": ["X", "Y"], "directed": [["X", "Y"]], "bidirected": []}, ...]}

Solutions::

    {"variables": [...], "status": "complete", "elapsed": 0.01, "explored": 20,
     "solutions": [[["X", "Y"], ["Y", "Z"]], ...]}

Graph::

    {"variables": [...], "edges": [["X", "Y"], ...]}
"""
from __future__ import annotations

import json
from pathlib import Path

from .graph import Dag, MalformedGraphError, Universe
from .instance import Instance
from .projection import InputGraph
from .solver import SolutionSet, Status


class FileFormatError(ValueError):
    pass


def _load(source) -> dict:
    if isinstance(source, dict):
        return source
    text = Path(source).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{source}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise FileFormatError(f"{source}: expected a JSON object")
    return doc


def _universe(doc) -> Universe:
    names = doc.get("variables")
    if not isinstance(names, list) or not names:
        raise FileFormatError("'variables' must be a non-empty list of names")
    try:
        return Universe(tuple(names))
    except ValueError as exc:
        raise FileFormatError(str(exc)) from None


def _pairs(u: Universe, items, what) -> list[tuple[int, int]]:
    out = []
    for item in items or []:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise FileFormatError(f"{what} entries must be [from, to] pairs")
        try:
            out.append((u.index(item[0]), u.index(item[1])))
        except KeyError as exc:
            raise FileFormatError(f"{what}: {exc.args[0]}") from None
    return out


def instance_from_dict(doc: dict) -> Instance:
    u = _universe(doc)
    inputs = []
    raw = doc.get("inputs")
    if not isinstance(raw, list) or not raw:
        raise FileFormatError("'inputs' must be a non-empty list")
    for k, entry in enumerate(raw):
        try:
            vs = [u.index(v) for v in entry["vars"]]
            inputs.append(InputGraph.from_edges(
                vs,
                _pairs(u, entry.get("directed"), f"input {k} directed"),
                _pairs(u, entry.get("bidirected"), f"input {k} bidirected"),
            ))
        except KeyError as exc:
            raise FileFormatError(f"input {k}: missing or unknown {exc.args[0]!r}") from None
        except MalformedGraphError as exc:
            raise FileFormatError(f"input {k}: {exc}") from None
    try:
        return Instance(u, inputs)
    except MalformedGraphError as exc:
        raise FileFormatError(str(exc)) from None


def instance_to_dict(inst: Instance) -> dict:
    names = inst.universe.names
    return {
        "variables": list(names),
        "inputs": [
            {
                "vars": [names[v] for v in t.vars],
                "directed": [[names[a], names[b]] for a, b in t.directed],
                "bidirected": [[names[a], names[b]] for a, b in t.bidirected],
            }
            for t in inst.inputs
        ],
    }


def read_instance(path) -> Instance:
    return instance_from_dict(_load(path))


def write_json(doc: dict, path=None) -> str:
    text = json.dumps(doc, indent=1) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def solutions_to_dict(sols: SolutionSet, universe: Universe, timing: bool = True) -> dict:
    names = universe.names
    if len(names) != sols.n:
        raise ValueError("universe size does not match the solution set")
    return {
        "variables": list(names),
        "status": sols.status.value,
        "elapsed": sols.elapsed if timing else None,
        "explored": sols.explored if timing else None,
        "solutions": [[[names[a], names[b]] for a, b in d.edges] for d in sols],
    }


def solutions_from_dict(doc: dict) -> tuple[Universe, SolutionSet]:
    u = _universe(doc)
    try:
        status = Status(doc["status"])
    except (KeyError, ValueError):
        raise FileFormatError("missing or unknown 'status'") from None
    graphs = []
    for k, edges in enumerate(doc.get("solutions", [])):
        try:
            graphs.append(Dag.from_edges(len(u), _pairs(u, edges, f"solution {k}")))
        except (MalformedGraphError, ValueError) as exc:
            raise FileFormatError(f"solution {k}: {exc}") from None
    sols = SolutionSet.from_dags(
        len(u), graphs, status, doc.get("elapsed") or 0.0, doc.get("explored") or 0
    )
    return u, sols


def read_solutions(path) -> tuple[Universe, SolutionSet]:
    return solutions_from_dict(_load(path))


def graph_to_dict(g: Dag, universe: Universe) -> dict:
    names = universe.names
    return {"variables": list(names), "edges": [[names[a], names[b]] for a, b in g.edges]}


def read_graph(path) -> tuple[Universe, Dag]:
    doc = _load(path)
    u = _universe(doc)
    try:
        return u, Dag.from_edges(len(u), _pairs(u, doc.get("edges"), "edges"))
    except (MalformedGraphError, ValueError) as exc:
        raise FileFormatError(str(exc)) from None
