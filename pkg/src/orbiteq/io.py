"""JSON documents and the workspace that resolves references between them.

Every document is an envelope ``{"schema": "<kind>/v1", "payload": {...}}``
and every payload has a ``"name"``.  A ``bundle/v1`` document carries a list
of documents.  Documents refer to each other by name; the workspace builds
objects on demand and rejects unknown or cyclic references.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable

from orbiteq import lattice
from orbiteq.action import MonoidAction
from orbiteq.equivalence.coe import CoeData, GroupoidIsoData, IsoEntry
from orbiteq.equivalence.csoe import CsoeData
from orbiteq.equivalence.group import GroupCocycleData
from orbiteq.equivalence.shift_coe import ShiftCoeData
from orbiteq.errors import InvalidInput, LoadError
from orbiteq.groupoid import Bisection, GroupoidElement
from orbiteq.maps import (
    ComposedMap,
    ProgressiveHomeo,
    ProgressiveMap,
    SlidingBlockMap,
    TableMap,
    TransducerMap,
)
from orbiteq.shift import ClopenSet, Sft, TruncatedPoint, validate_sft
from orbiteq.tables import CylinderTable, PairTable

VERSION = "v1"
KINDS = ("sft", "map", "homeo", "action", "csoe", "coe", "shift_coe", "group_cocycle", "groupoid_iso",
         "groupoid_elements")


def envelope(kind: str, payload: dict) -> dict:
    return {"schema": f"{kind}/{VERSION}", "payload": payload}


def kind_of(doc: dict) -> str:
    schema = doc.get("schema") if isinstance(doc, dict) else None
    if not isinstance(schema, str) or "/" not in schema:
        raise LoadError("document has no schema field")
    kind, version = schema.rsplit("/", 1)
    if version != VERSION:
        raise LoadError(f"unsupported schema version {schema!r}")
    if kind not in KINDS and kind != "bundle":
        raise LoadError(f"unknown document kind {kind!r}")
    return kind


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_json(path, doc: dict) -> None:
    Path(path).write_text(dumps(doc))


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise LoadError(f"cannot read {path}: {exc}") from None


def normalize(doc: dict) -> dict:
    """Drop the embedded verification report so documents compare by content."""
    return {k: v for k, v in doc.items() if k != "report"}


# words, points, elements


def _word(sft: Sft, text) -> tuple[int, ...]:
    return sft.parse_word(text)


def point_to_json(sft: Sft, p: TruncatedPoint) -> dict:
    return {"prefix": sft.format_word(p.prefix), "period": sft.format_word(p.period)}


def point_from_json(sft: Sft, d) -> TruncatedPoint:
    if not isinstance(d, dict):
        raise LoadError(f"a point must be an object, got {d!r}")
    p = TruncatedPoint.periodic(_word(sft, d.get("prefix", "")), _word(sft, d.get("preperiod", "")),
                                _word(sft, d.get("period", "")))
    if not p.is_admissible(sft):
        raise InvalidInput(f"point {p.format(sft)} is not admissible in {sft.name}")
    return p


def _elem(text, rank: int) -> tuple[int, ...]:
    try:
        return lattice.parse_element(text, rank)
    except ValueError as exc:
        raise LoadError(str(exc)) from None


def clopen_to_json(c: ClopenSet) -> list[str]:
    return c.format()


def clopen_from_json(sft: Sft, words) -> ClopenSet:
    return ClopenSet.from_words(sft, [_word(sft, w) for w in words]) if words else ClopenSet.empty(sft)


def bisection_to_json(B: Bisection) -> dict:
    return {"U": clopen_to_json(B.U), "m": list(B.m), "n": list(B.n), "V": clopen_to_json(B.V)}


def bisection_from_json(sft: Sft, rank: int, d: dict) -> Bisection:
    return Bisection(clopen_from_json(sft, d["U"]), _elem(d["m"], rank), _elem(d["n"], rank),
                     clopen_from_json(sft, d["V"]))


def element_to_json(sft: Sft, e: GroupoidElement) -> dict:
    return {"x": point_to_json(sft, e.x), "g": list(e.g), "y": point_to_json(sft, e.y),
            "witness": [list(e.m), list(e.n)]}


# tables


def _value(v):
    if isinstance(v, int):
        return (v,)
    if isinstance(v, list):
        return tuple(int(x) for x in v)
    raise LoadError(f"table value {v!r} is neither an integer nor a list")


def cylinder_table_to_json(t: CylinderTable, scalar: bool = False) -> dict:
    entries = {}
    for (k, w), v in sorted(t.entries.items()):
        word = t.sft.format_word(w)
        key = word if scalar else f"{lattice.format_element(k)}|{word}"
        entries[key] = v[0] if scalar else list(v)
    return {"depth": t.depth, "entries": entries}


def cylinder_table_from_json(sft: Sft, d: dict, key_rank: int | None, name: str) -> CylinderTable:
    """``key_rank`` None means the keyless ``"word": value`` form."""
    try:
        depth = int(d["depth"])
        raw = d["entries"]
    except (KeyError, TypeError, ValueError):
        raise LoadError(f"table {name!r} needs 'depth' and 'entries'") from None
    entries = {}
    for key, v in raw.items():
        if key_rank is None:
            k, w = (), key
        else:
            if "|" not in key:
                raise LoadError(f"table {name!r}: key {key!r} is not of the form 'm|word'")
            ks, w = key.split("|", 1)
            k = _elem(ks, key_rank)
        entries[(k, _word(sft, w))] = _value(v)
    t = CylinderTable.from_mixed(sft, entries, name)
    if t.depth < depth:
        t = t.refine(depth)
    return t


def pair_table_to_json(t: PairTable) -> dict:
    f = t.sft.format_word
    entries = {
        f"{lattice.format_element(m)}|{lattice.format_element(n)}|{f(wx)}|{f(wy)}": list(v)
        for (m, n, wx, wy), v in sorted(t.entries.items())
    }
    return {"depth": t.depth, "entries": entries}


def pair_table_from_json(sft: Sft, d: dict, rank: int, name: str) -> PairTable:
    try:
        depth = int(d["depth"])
        raw = d["entries"]
    except (KeyError, TypeError, ValueError):
        raise LoadError(f"table {name!r} needs 'depth' and 'entries'") from None
    entries = {}
    for key, v in raw.items():
        parts = key.split("|")
        if len(parts) != 4:
            raise LoadError(f"table {name!r}: key {key!r} is not of the form 'm|n|wx|wy'")
        m, n = _elem(parts[0], rank), _elem(parts[1], rank)
        entries[(m, n, _word(sft, parts[2]), _word(sft, parts[3]))] = _value(v)
    return PairTable(sft, depth, entries, name)


# maps


def _state_names(f: TransducerMap) -> dict:
    """Readable state names: kept when all states are strings, else numbered in discovery order."""
    if all(isinstance(q, str) for q in f.states):
        return {q: q for q in f.states}
    order = [f.start]
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for s in range(f.domain.size):
            if (q, s) in f.delta:
                q2 = f.delta[(q, s)][0]
                if q2 not in order:
                    order.append(q2)
    return {q: f"q{j}" for j, q in enumerate(order)}


def map_to_json(f: ProgressiveMap, name: str) -> dict:
    dom, cod = f.domain, f.codomain
    p: dict[str, Any] = {"name": name, "domain": dom.name, "codomain": cod.name}
    if isinstance(f, SlidingBlockMap):
        p["kind"] = "sliding_block"
        p["window"] = f.window
        p["rule"] = {dom.format_word(w): cod.labels[s] for w, s in sorted(f.rule.items())}
    elif isinstance(f, TransducerMap):
        names = _state_names(f)
        p["kind"] = "transducer"
        p["start"] = names[f.start]
        p["transitions"] = sorted(
            [names[q], dom.labels[s], names[q2], cod.labels[o]] for (q, s), (q2, o) in f.delta.items()
        )
    elif isinstance(f, TableMap):
        p["kind"] = "table"
        p["modulus"] = [[n, f.modulus(n)] for n in f.depths]
        p["tables"] = {
            str(n): {dom.format_word(w): cod.format_word(o) for w, o in sorted(t.items())}
            for n, t in sorted(f.tables.items())
        }
    elif isinstance(f, ComposedMap):
        raise InvalidInput(f"composite map {f.label()} has no document form")
    else:
        raise InvalidInput(f"map {f.label()} has no document form")
    return envelope("map", p)


def map_from_json(p: dict, dom: Sft, cod: Sft) -> ProgressiveMap:
    kind = p.get("kind", "table")
    name = p["name"]
    if kind == "sliding_block":
        rule = {_word(dom, w): _label(cod, s) for w, s in p["rule"].items()}
        return SlidingBlockMap(dom, cod, int(p["window"]), rule, name=name)
    if kind == "transducer":
        delta = {}
        for row in p["transitions"]:
            q, s, q2, o = row
            delta[(q, _label(dom, s))] = (q2, _label(cod, o))
        return TransducerMap(dom, cod, p["start"], delta, name=name)
    if kind == "table":
        mod = {int(n): int(m) for n, m in p["modulus"]}
        tables = {int(n): {_word(dom, w): _word(cod, o) for w, o in t.items()} for n, t in p["tables"].items()}
        return TableMap(dom, cod, mod, tables, name=name)
    raise LoadError(f"map {name!r}: unknown kind {kind!r}")


def _label(sft: Sft, s) -> int:
    try:
        return sft.labels.index(str(s))
    except ValueError:
        raise LoadError(f"unknown symbol {s!r} in {sft.name}") from None


def sft_to_json(sft: Sft) -> dict:
    sep = "." if sft.separator else ""
    forbidden = [sep.join((sft.labels[a], sft.labels[b])) for a in range(sft.size) for b in range(sft.size)
                 if (a, b) not in sft.allowed]
    return envelope("sft", {"name": sft.name, "alphabet": list(sft.labels), "forbidden": forbidden})


# workspace


class Workspace:
    """Named documents with lazily built, cached objects."""

    def __init__(self):
        self.docs: dict[str, tuple[str, dict]] = {}
        self.objects: dict[str, Any] = {}
        self._building: set[str] = set()

    def add(self, doc: dict, origin: str = "") -> None:
        kind = kind_of(doc)
        payload = doc.get("payload")
        if not isinstance(payload, dict):
            raise LoadError(f"{origin or 'document'}: payload must be an object")
        if kind == "bundle":
            for sub in payload.get("documents", []):
                self.add(sub, origin)
            return
        name = payload.get("name")
        if not isinstance(name, str) or not name:
            raise LoadError(f"{origin or 'document'}: {kind} document without a name")
        if name in self.docs:
            if self.docs[name] == (kind, payload):
                return
            raise LoadError(f"duplicate document name {name!r}")
        self.docs[name] = (kind, payload)

    def load(self, path) -> None:
        self.add(read_json(path), str(path))

    def names(self, kind: str | None = None) -> list[str]:
        return [n for n, (k, _) in self.docs.items() if kind is None or k == kind]

    def kind(self, name: str) -> str:
        return self.docs[name][0]

    def resolve_all(self) -> None:
        for name in list(self.docs):
            self.get(name)

    def get(self, name: str, kind: str | None = None):
        if name not in self.docs:
            raise LoadError(f"unresolved reference {name!r}")
        k, payload = self.docs[name]
        if kind is not None and k != kind:
            raise LoadError(f"{name!r} is a {k} document, expected {kind}")
        if name in self.objects:
            return self.objects[name]
        if name in self._building:
            raise LoadError(f"cyclic reference through {name!r}")
        self._building.add(name)
        try:
            obj = _BUILDERS[k](self, payload)
        except KeyError as exc:
            raise LoadError(f"{k} document {name!r} lacks field {exc.args[0]!r}") from None
        except (TypeError, ValueError, AttributeError) as exc:
            raise LoadError(f"{k} document {name!r} is malformed: {exc}") from None
        finally:
            self._building.discard(name)
        self.objects[name] = obj
        return obj

    def pick(self, kind: str, name: str | None = None) -> tuple[str, Any]:
        """The named document of ``kind``, or the only (last) one when no name is given."""
        if name is not None:
            return name, self.get(name, kind)
        cands = self.names(kind)
        if not cands:
            raise LoadError(f"no {kind} document among the inputs")
        return cands[-1], self.get(cands[-1], kind)


def _build_sft(ws: Workspace, p: dict) -> Sft:
    return validate_sft(p["name"], p["alphabet"], p.get("forbidden", []))


def _build_map(ws: Workspace, p: dict) -> ProgressiveMap:
    return map_from_json(p, ws.get(p["domain"], "sft"), ws.get(p["codomain"], "sft"))


def _build_homeo(ws: Workspace, p: dict) -> ProgressiveHomeo:
    return ProgressiveHomeo(ws.get(p["forward"], "map"), ws.get(p["inverse"], "map"), name=p["name"])


def _build_action(ws: Workspace, p: dict) -> MonoidAction:
    space = ws.get(p["space"], "sft")
    gens = [ws.get(g, "map") for g in p["generators"]]
    if "rank" in p and int(p["rank"]) != len(gens):
        raise InvalidInput(f"action {p['name']!r}: rank {p['rank']} but {len(gens)} generators")
    invs = None
    if p.get("by_homeomorphisms"):
        if not p.get("inverses"):
            raise InvalidInput(f"action {p['name']!r} is by homeomorphisms but lists no inverses")
        invs = [ws.get(g, "map") for g in p["inverses"]]
    return MonoidAction(space, gens, invs, name=p["name"])


def _actions(ws: Workspace, p: dict) -> tuple[MonoidAction, MonoidAction, ProgressiveHomeo]:
    return ws.get(p["source"], "action"), ws.get(p["target"], "action"), ws.get(p["phi"], "homeo")


def _build_csoe(ws: Workspace, p: dict) -> CsoeData:
    X, Y, phi = _actions(ws, p)
    a = cylinder_table_from_json(X.space, p["a"], X.rank, "a")
    b = cylinder_table_from_json(Y.space, p["b"], Y.rank, "b")
    return CsoeData(X, Y, phi, a, b, int(p["degree_bound"]), p["name"])


def _build_coe(ws: Workspace, p: dict) -> CoeData:
    X, Y, phi = _actions(ws, p)
    tabs = [pair_table_from_json(X.space, p[k], X.rank, k) for k in ("a1", "b1")]
    tabs += [pair_table_from_json(Y.space, p[k], Y.rank, k) for k in ("a2", "b2")]
    return CoeData(X, Y, phi, *tabs, int(p["degree_bound"]), p["name"])


def _build_shift_coe(ws: Workspace, p: dict) -> ShiftCoeData:
    X, Y, phi = _actions(ws, p)
    tabs = [cylinder_table_from_json(X.space, p[k], None, k) for k in ("k", "l")]
    tabs += [cylinder_table_from_json(Y.space, p[k], None, k) for k in ("kp", "lp")]
    return ShiftCoeData(X, Y, phi, *tabs, name=p["name"])


def _build_group_cocycle(ws: Workspace, p: dict) -> GroupCocycleData:
    X, Y, phi = _actions(ws, p)
    a = cylinder_table_from_json(X.space, p["a"], X.rank, "a")
    b = cylinder_table_from_json(Y.space, p["b"], Y.rank, "b")
    return GroupCocycleData(X, Y, phi, a, b, int(p["degree_bound"]), p["name"])


def _build_groupoid_iso(ws: Workspace, p: dict) -> GroupoidIsoData:
    X, Y, phi = _actions(ws, p)

    def entries(items, src, dst):
        return [IsoEntry(bisection_from_json(src.space, src.rank, e["A"]),
                         bisection_from_json(dst.space, dst.rank, e["B"])) for e in items]

    depths = p.get("pair_depths")
    return GroupoidIsoData(X, Y, phi, entries(p["forward"], X, Y), entries(p["backward"], Y, X),
                           int(p["degree_bound"]), p["name"], tuple(depths) if depths else None)


def _build_elements(ws: Workspace, p: dict) -> tuple[MonoidAction, list[GroupoidElement]]:
    from orbiteq.groupoid import make_groupoid_element, sample_elements

    act = ws.get(p["action"], "action")
    out = []
    for e in p.get("elements", []):
        x, y = point_from_json(act.space, e["x"]), point_from_json(act.space, e["y"])
        m, n = (_elem(v, act.rank) for v in e["witness"])
        if "g" in e and _elem(e["g"], act.rank) != lattice.sub(m, n):
            raise InvalidInput("element g differs from the witness difference m - n")
        out.append(make_groupoid_element(act, x, m, n, y))
    if "sample" in p:
        s = p["sample"]
        out += sample_elements(act, int(s.get("count", 20)), int(s.get("degree", 2)), int(s.get("seed", 0)))
    return act, out


_BUILDERS: dict[str, Callable[[Workspace, dict], Any]] = {
    "sft": _build_sft,
    "map": _build_map,
    "homeo": _build_homeo,
    "action": _build_action,
    "csoe": _build_csoe,
    "coe": _build_coe,
    "shift_coe": _build_shift_coe,
    "group_cocycle": _build_group_cocycle,
    "groupoid_iso": _build_groupoid_iso,
    "groupoid_elements": _build_elements,
}


# export


def _renamed(doc: dict, name: str) -> dict:
    if doc["payload"].get("name") == name:
        return doc
    return {**doc, "payload": {**doc["payload"], "name": name}}


class Exporter:
    """Collects documents for a self-contained bundle, dependencies first."""

    def __init__(self):
        self.docs: dict[str, dict] = {}
        self._names: dict[int, str] = {}

    def _put(self, name: str, doc: dict) -> str:
        """Store ``doc``; a clashing name gets a numeric suffix."""
        base, i = name, 1
        while name in self.docs and self.docs[name] != _renamed(doc, name):
            i += 1
            name = f"{base}_{i}"
        doc = _renamed(doc, name)
        self.docs[name] = doc
        return name

    def sft(self, sft: Sft) -> str:
        return self._put(sft.name, sft_to_json(sft))

    def map(self, f: ProgressiveMap) -> str:
        dom, cod = self.sft(f.domain), self.sft(f.codomain)
        name = f.name or f"map_{f.domain.name}_{f.codomain.name}"
        doc = map_to_json(f, name)
        doc["payload"].update(domain=dom, codomain=cod)
        return self._put(name, doc)

    def homeo(self, h: ProgressiveHomeo) -> str:
        fwd, inv = self.map(h.forward), self.map(h.inverse)
        return self._put(h.name, envelope("homeo", {"name": h.name, "forward": fwd, "inverse": inv}))

    def action(self, act: MonoidAction) -> str:
        p = {"name": act.name, "space": self.sft(act.space), "rank": act.rank,
             "generators": [self.map(g) for g in act.generators], "by_homeomorphisms": act.by_homeomorphisms}
        if act.inverses is not None:
            p["inverses"] = [self.map(g) for g in act.inverses]
        return self._put(act.name, envelope("action", p))

    def _head(self, data, name: str) -> dict:
        return {"name": name, "source": self.action(data.source), "target": self.action(data.target),
                "phi": self.homeo(data.phi)}

    def csoe(self, data: CsoeData, name: str | None = None) -> str:
        name = name or data.name
        p = self._head(data, name)
        p.update(degree_bound=data.degree_bound, a=cylinder_table_to_json(data.a),
                 b=cylinder_table_to_json(data.b))
        return self._put(name, envelope("csoe", p))

    def coe(self, data: CoeData, name: str | None = None) -> str:
        name = name or data.name
        p = self._head(data, name)
        p["degree_bound"] = data.degree_bound
        for k in ("a1", "b1", "a2", "b2"):
            p[k] = pair_table_to_json(getattr(data, k))
        return self._put(name, envelope("coe", p))

    def shift_coe(self, data: ShiftCoeData, name: str | None = None) -> str:
        name = name or data.name
        p = self._head(data, name)
        for k in ("k", "l", "kp", "lp"):
            p[k] = cylinder_table_to_json(getattr(data, k), scalar=True)
        return self._put(name, envelope("shift_coe", p))

    def group_cocycle(self, data: GroupCocycleData, name: str | None = None) -> str:
        name = name or data.name
        p = self._head(data, name)
        p.update(degree_bound=data.degree_bound, a=cylinder_table_to_json(data.a),
                 b=cylinder_table_to_json(data.b))
        return self._put(name, envelope("group_cocycle", p))

    def groupoid_iso(self, iso: GroupoidIsoData, name: str | None = None) -> str:
        name = name or iso.name
        p = self._head(iso, name)
        p["degree_bound"] = iso.degree_bound
        p["forward"] = [{"A": bisection_to_json(e.A), "B": bisection_to_json(e.B)} for e in iso.forward]
        p["backward"] = [{"A": bisection_to_json(e.A), "B": bisection_to_json(e.B)} for e in iso.backward]
        if iso.pair_depths is not None:
            p["pair_depths"] = list(iso.pair_depths)
        return self._put(name, envelope("groupoid_iso", p))

    def elements(self, act: MonoidAction, elements, name: str) -> str:
        p = {"name": name, "action": self.action(act),
             "elements": [element_to_json(act.space, e) for e in elements]}
        return self._put(name, envelope("groupoid_elements", p))

    def raw(self, doc: dict) -> str:
        return self._put(doc["payload"]["name"], doc)

    def bundle(self) -> dict:
        return envelope("bundle", {"documents": list(self.docs.values())})


def export(obj, name: str | None = None) -> dict:
    """A bundle holding ``obj`` and everything it refers to."""
    ex = Exporter()
    dispatch = [
        (CsoeData, ex.csoe), (CoeData, ex.coe), (ShiftCoeData, ex.shift_coe),
        (GroupCocycleData, ex.group_cocycle), (GroupoidIsoData, ex.groupoid_iso),
    ]
    for cls, fn in dispatch:
        if isinstance(obj, cls):
            fn(obj, name)
            return ex.bundle()
    if isinstance(obj, MonoidAction):
        ex.action(obj)
    elif isinstance(obj, ProgressiveHomeo):
        ex.homeo(obj)
    elif isinstance(obj, ProgressiveMap):
        ex.map(obj)
    elif isinstance(obj, Sft):
        ex.sft(obj)
    else:
        raise InvalidInput(f"cannot export {type(obj).__name__}")
    return ex.bundle()


def load_paths(paths) -> Workspace:
    ws = Workspace()
    for p in paths:
        ws.load(p)
    return ws
