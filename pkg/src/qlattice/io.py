"""JSON file formats and line-numbered input diagnostics.

Ray system::

    {"radicand": m, "dimension": d, "rays": [[lit, ...], ...], "contexts": [[int, ...], ...]}

Observable::

    {"radicand": m, "dimension": n, "eigenpairs": [{"value": "3/2", "vectors": [[lit, ...], ...]}, ...]}

State: ``{"vector": [lit, ...]}``.  Proposition: ``{"vectors": [[lit, ...], ...]}``.
States and propositions may carry their own ``radicand``/``dimension``;
otherwise they inherit the workspace's.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .bub_clifton import Observable, PureState
from .ks import RaySystem, validate_ray_system
from .linalg import Subspace
from .scalar import Scalar, check_radicand, parse_scalar

__all__ = [
    "InputError",
    "Workspace",
    "read_json",
    "ray_system_from_json",
    "ray_system_to_json",
    "observable_from_json",
    "observable_to_json",
    "state_from_json",
    "state_to_json",
    "proposition_from_json",
    "subspace_to_json",
    "subspace_from_json",
    "load_ray_system",
    "load_observable",
    "load_state",
    "load_proposition",
]


class InputError(ValueError):
    """Malformed or inconsistent input; ``str()`` carries file:line diagnostics."""


@dataclass
class _Source:
    name: str
    text: str = ""

    def where(self, path: tuple[Any, ...] = ()) -> str:
        line = _locate(self.text, path) if self.text else None
        return f"{self.name}:{line}" if line else self.name


def _locate(text: str, path: tuple[Any, ...]) -> int | None:
    """Line number where the JSON value at ``path`` starts (best effort)."""
    pos, depth_target = 0, list(path)
    try:
        pos = _skip_ws(text, 0)
        for step in depth_target:
            if text[pos] == "{" and isinstance(step, str):
                pos = _seek_key(text, pos, step)
            elif text[pos] == "[" and isinstance(step, int):
                pos = _seek_index(text, pos, step)
            else:
                break
    except (IndexError, ValueError):
        return None
    return text.count("\n", 0, pos) + 1


def _skip_ws(text: str, pos: int) -> int:
    while text[pos] in " \t\r\n":
        pos += 1
    return pos


def _skip_value(text: str, pos: int) -> int:
    ch = text[pos]
    if ch == '"':
        pos += 1
        while text[pos] != '"':
            pos += 2 if text[pos] == "\\" else 1
        return pos + 1
    if ch in "[{":
        close = "]" if ch == "[" else "}"
        depth, pos = 0, pos
        while True:
            c = text[pos]
            if c == '"':
                pos = _skip_value(text, pos)
                continue
            if c in "[{":
                depth += 1
            elif c in "]}":
                depth -= 1
                if depth == 0:
                    return pos + 1
            pos += 1
    while text[pos] not in ",]} \t\r\n":
        pos += 1
    return pos


def _seek_key(text: str, pos: int, key: str) -> int:
    pos = _skip_ws(text, pos + 1)
    while text[pos] != "}":
        end = _skip_value(text, pos)
        name = json.loads(text[pos:end])
        pos = _skip_ws(text, end)
        pos = _skip_ws(text, pos + 1)  # ':'
        if name == key:
            return pos
        pos = _skip_ws(text, _skip_value(text, pos))
        if text[pos] == ",":
            pos = _skip_ws(text, pos + 1)
    raise ValueError(key)


def _seek_index(text: str, pos: int, index: int) -> int:
    pos = _skip_ws(text, pos + 1)
    k = 0
    while text[pos] != "]":
        if k == index:
            return pos
        pos = _skip_ws(text, _skip_value(text, pos))
        if text[pos] == ",":
            pos = _skip_ws(text, pos + 1)
        k += 1
    raise ValueError(index)


def read_json(path: str | Path) -> tuple[dict, _Source]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg}, column {exc.colno})") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}:1: expected a JSON object")
    return data, _Source(str(path), text)


def _src(source: _Source | None) -> _Source:
    return source if source is not None else _Source("<input>")


def _radicand(data: dict, src: _Source, default: int | None = None) -> int:
    m = data.get("radicand", default)
    if m is None:
        raise InputError(f"{src.where()}: missing 'radicand'")
    try:
        return check_radicand(m)
    except ValueError as exc:
        raise InputError(f"{src.where(('radicand',))}: {exc}") from None


def _int_field(data: dict, key: str, src: _Source, default: int | None = None) -> int:
    v = data.get(key, default)
    if v is None:
        raise InputError(f"{src.where()}: missing '{key}'")
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise InputError(f"{src.where((key,))}: '{key}' must be a positive integer")
    return v


def _literal(x: Any, m: int, src: _Source, path: tuple) -> Scalar:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{src.where(path)}: scalar must be an integer or a literal string, got {x!r}")
    try:
        return parse_scalar(str(x), m)
    except ValueError as exc:
        raise InputError(f"{src.where(path)}: {exc}") from None


def _vector(raw: Any, n: int, m: int, src: _Source, path: tuple) -> tuple[Scalar, ...]:
    if not isinstance(raw, list):
        raise InputError(f"{src.where(path)}: expected a list of scalars")
    if len(raw) != n:
        raise InputError(f"{src.where(path)}: vector has {len(raw)} entries, dimension is {n}")
    return tuple(_literal(x, m, src, path + (k,)) for k, x in enumerate(raw))


def _vectors(raw: Any, n: int, m: int, src: _Source, path: tuple) -> list[tuple[Scalar, ...]]:
    if not isinstance(raw, list):
        raise InputError(f"{src.where(path)}: expected a list of vectors")
    return [_vector(v, n, m, src, path + (k,)) for k, v in enumerate(raw)]


# -- ray systems --------------------------------------------------------------


def ray_system_from_json(data: dict, source: _Source | None = None, name: str = "") -> RaySystem:
    """Parse and validate a ray system; defects raise :class:`InputError`."""
    src = _src(source)
    m = _radicand(data, src)
    d = _int_field(data, "dimension", src)
    vectors = _vectors(data.get("rays"), d, m, src, ("rays",))
    contexts_raw = data.get("contexts")
    if not isinstance(contexts_raw, list):
        raise InputError(f"{src.where()}: missing 'contexts' list")
    contexts = []
    for c, ctx in enumerate(contexts_raw):
        if not isinstance(ctx, list) or not all(isinstance(r, int) and not isinstance(r, bool) for r in ctx):
            raise InputError(f"{src.where(('contexts', c))}: context must be a list of ray indices")
        contexts.append(tuple(ctx))
    for k, v in enumerate(vectors):
        if not any(v):
            raise InputError(f"{src.where(('rays', k))}: ray {k} is the zero vector")
    rs = RaySystem(d, tuple(Subspace.span([v], d) for v in vectors), tuple(contexts), m, name)
    defects = validate_ray_system(rs)
    if defects:
        lines = []
        for msg in defects:
            kind, _, rest = msg.partition(" ")
            idx = rest.split(":")[0]
            path = ("contexts" if kind == "context" else "rays", int(idx)) if idx.isdigit() else ()
            lines.append(f"{src.where(path)}: {msg}")
        raise InputError("\n".join(lines))
    return rs


def ray_system_to_json(rs: RaySystem) -> dict:
    return {
        "radicand": rs.radicand,
        "dimension": rs.ambient_dim,
        "rays": [[x.to_literal() for x in r.basis[0]] for r in rs.rays],
        "contexts": [list(c) for c in rs.contexts],
    }


def load_ray_system(path: str | Path) -> RaySystem:
    data, src = read_json(path)
    return ray_system_from_json(data, src, name=Path(path).stem)


# -- observables, states, propositions ----------------------------------------


def observable_from_json(data: dict, source: _Source | None = None,
                         radicand: int | None = None, dimension: int | None = None) -> Observable:
    src = _src(source)
    m = _radicand(data, src, radicand)
    n = _int_field(data, "dimension", src, dimension)
    pairs_raw = data.get("eigenpairs")
    if not isinstance(pairs_raw, list) or not pairs_raw:
        raise InputError(f"{src.where()}: missing 'eigenpairs' list")
    pairs = []
    for k, entry in enumerate(pairs_raw):
        path = ("eigenpairs", k)
        if not isinstance(entry, dict):
            raise InputError(f"{src.where(path)}: eigenpair must be an object")
        try:
            value = Fraction(str(entry.get("value")))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{src.where(path + ('value',))}: eigenvalue must be an exact rational") from None
        vecs = _vectors(entry.get("vectors"), n, m, src, path + ("vectors",))
        pairs.append((value, Subspace.span(vecs, n)))
    try:
        return Observable.from_eigenspaces(pairs, n)
    except ValueError as exc:
        raise InputError(f"{src.where(('eigenpairs',))}: {exc}") from None


def observable_to_json(obs: Observable, radicand: int) -> dict:
    return {
        "radicand": radicand,
        "dimension": obs.ambient_dim,
        "eigenpairs": [
            {"value": str(v), "vectors": [[x.to_literal() for x in b] for b in s.basis]}
            for v, s in obs.eigenpairs
        ],
    }


def state_from_json(data: dict, source: _Source | None = None,
                    radicand: int | None = None, dimension: int | None = None) -> PureState:
    src = _src(source)
    m = _radicand(data, src, radicand if radicand is not None else 1)
    raw = data.get("vector")
    if not isinstance(raw, list):
        raise InputError(f"{src.where()}: missing 'vector'")
    n = _int_field(data, "dimension", src, dimension if dimension is not None else len(raw))
    vec = _vector(raw, n, m, src, ("vector",))
    if not any(vec):
        raise InputError(f"{src.where(('vector',))}: state vector is zero")
    return PureState(vec)


def state_to_json(state: PureState, radicand: int) -> dict:
    return {"radicand": radicand, "vector": [x.to_literal() for x in state.vector]}


def proposition_from_json(data: dict, source: _Source | None = None,
                          radicand: int | None = None, dimension: int | None = None) -> Subspace:
    src = _src(source)
    m = _radicand(data, src, radicand if radicand is not None else 1)
    n = _int_field(data, "dimension", src, dimension)
    return Subspace.span(_vectors(data.get("vectors"), n, m, src, ("vectors",)), n)


def subspace_to_json(s: Subspace) -> list[list[str]]:
    return [[x.to_literal() for x in v] for v in s.basis]


def subspace_from_json(raw: list, n: int, m: int) -> Subspace:
    return Subspace.span([[parse_scalar(x, m) for x in v] for v in raw], n)


def load_observable(path, radicand=None, dimension=None) -> Observable:
    data, src = read_json(path)
    return observable_from_json(data, src, radicand, dimension)


def load_state(path, radicand=None, dimension=None) -> PureState:
    data, src = read_json(path)
    return state_from_json(data, src, radicand, dimension)


def load_proposition(path, radicand=None, dimension=None) -> Subspace:
    data, src = read_json(path)
    return proposition_from_json(data, src, radicand, dimension)


# -- workspace ----------------------------------------------------------------


@dataclass
class Workspace:
    """Named entities sharing one radicand and one dimension.

    The first file that states a radicand (or dimension) fixes it; later
    files must agree or omit it, in which case they inherit the value.
    """

    radicand: int | None = None
    dimension: int | None = None
    states: dict[str, PureState] = field(default_factory=dict)
    observables: dict[str, Observable] = field(default_factory=dict)
    ray_systems: dict[str, RaySystem] = field(default_factory=dict)
    propositions: dict[str, Subspace] = field(default_factory=dict)

    def _prepare(self, name: str, data: dict, src: _Source) -> None:
        for table in (self.states, self.observables, self.ray_systems, self.propositions):
            if name in table:
                raise InputError(f"{src.where()}: name {name!r} already loaded")
        m = data.get("radicand")
        if m is not None and self.radicand is not None and m != self.radicand:
            raise InputError(
                f"{src.where(('radicand',))}: radicand {m} differs from workspace radicand {self.radicand}"
            )
        n = data.get("dimension")
        if n is not None and self.dimension is not None and n != self.dimension:
            raise InputError(
                f"{src.where(('dimension',))}: dimension {n} differs from workspace dimension {self.dimension}"
            )

    def _commit(self, data: dict, n: int, src: _Source) -> None:
        if self.dimension is not None and n != self.dimension:
            raise InputError(f"{src.where()}: dimension {n} differs from workspace dimension {self.dimension}")
        self.dimension = n
        if self.radicand is None and data.get("radicand") is not None:
            self.radicand = data["radicand"]

    def _m(self) -> int:
        return self.radicand if self.radicand is not None else 1

    def load_observable(self, path: str | Path, name: str | None = None) -> Observable:
        data, src = read_json(path)
        name = name or Path(path).stem
        self._prepare(name, data, src)
        obs = observable_from_json(data, src, self._m(), self.dimension)
        self._commit(data, obs.ambient_dim, src)
        self.observables[name] = obs
        return obs

    def load_state(self, path: str | Path, name: str | None = None) -> PureState:
        data, src = read_json(path)
        name = name or Path(path).stem
        self._prepare(name, data, src)
        state = state_from_json(data, src, self._m(), self.dimension)
        self._commit(data, state.ambient_dim, src)
        self.states[name] = state
        return state

    def load_proposition(self, path: str | Path, name: str | None = None) -> Subspace:
        data, src = read_json(path)
        name = name or Path(path).stem
        self._prepare(name, data, src)
        if self.dimension is None and "dimension" not in data:
            raise InputError(f"{src.where()}: proposition needs a 'dimension'")
        prop = proposition_from_json(data, src, self._m(), self.dimension)
        self._commit(data, prop.ambient_dim, src)
        self.propositions[name] = prop
        return prop

    def load_ray_system(self, path: str | Path, name: str | None = None) -> RaySystem:
        data, src = read_json(path)
        name = name or Path(path).stem
        self._prepare(name, data, src)
        rs = ray_system_from_json(data, src, name=name)
        self._commit(data, rs.ambient_dim, src)
        self.ray_systems[name] = rs
        return rs
