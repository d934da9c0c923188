import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from config import DATA_DIR
from errors import FormatError, QuandleError
from abelian import IntMatrix
from inner import CosetQuandleSpec
from permgroup import PermGroup, Permutation, generate
from quandle_core import FiniteGroup, FiniteQuandle, validate_group, validate_quandle
from tower import (QuandleTower, coset_tower, conj_tower, constant_group_tower, constant_tower,
                   davis_tower, disjoint_union_tower, make_tower, m_product_tower, product_of_towers,
                   tak_tower, zhat_tower, zp_group_tower)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


# ============================================================================
# .qnd TEXT FORMAT
# ============================================================================
def parse_qnd(text: str, source: str = "<string>") -> FiniteQuandle:
    """
    `quandle <n>` header, then n rows of n space-separated 0-indexed entries.
    Anything after `#` on a line is a comment.
    """
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))
    if not lines:
        raise FormatError(f"{source}: empty file")

    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "quandle" or not parts[1].isdigit():
        raise FormatError(f"{source}:{number}: expected 'quandle <n>', got {header!r}", witness=number)
    n = int(parts[1])

    rows = []
    for number, content in lines[1:]:
        try:
            row = [int(v) for v in content.split()]
        except ValueError:
            raise FormatError(f"{source}:{number}: non-integer entry in {content!r}", witness=number)
        if len(row) != n:
            raise FormatError(f"{source}:{number}: expected {n} entries, got {len(row)}", witness=number)
        rows.append(row)
    if len(rows) != n:
        raise FormatError(f"{source}: expected {n} rows, got {len(rows)}", witness=len(rows))
    return validate_quandle(rows, name=Path(source).stem if source != "<string>" else "")


def format_qnd(Q: FiniteQuandle) -> str:
    lines = [f"quandle {Q.n}"]
    lines.extend(" ".join(str(v) for v in row) for row in Q.table())
    return "\n".join(lines) + "\n"


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise FormatError(f"{path}: not UTF-8 text (byte {e.start})", witness=e.start)
    except OSError as e:
        raise FormatError(f"{path}: cannot read ({e.strerror})", witness=str(path))


def _read_json(path: Path) -> Any:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}:{e.lineno}: invalid JSON ({e.msg})", witness=e.lineno)


def _require(obj: Dict[str, Any], key: str, path: Path):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError(f"{path}: missing field {key!r}", witness=key)
    return obj[key]


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _require_int(obj: Dict[str, Any], key: str, source: Any, minimum: int = 0) -> int:
    value = _require(obj, key, source)
    if not _is_int(value) or value < minimum:
        raise FormatError(f"{source}: field {key!r} must be an integer >= {minimum}, got {value!r}",
                          witness=key)
    return value


def _int_rows(value: Any, source: Any, what: str) -> List[List[int]]:
    """A list of lists of integers; the witness is the offending row (and column)"""
    if not isinstance(value, list):
        raise FormatError(f"{source}: {what} must be a list of rows")
    for i, row in enumerate(value):
        if not isinstance(row, list):
            raise FormatError(f"{source}: {what} row {i} is not a list: {row!r}", witness=i)
        for j, v in enumerate(row):
            if not _is_int(v):
                raise FormatError(f"{source}: {what} row {i} entry {j} is not an integer: {v!r}",
                                  witness=(i, j))
    return value


def _str_list(obj: Dict[str, Any], key: str, source: Any) -> List[str]:
    value = _require(obj, key, source)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise FormatError(f"{source}: field {key!r} must be a list of strings, got {value!r}", witness=key)
    return value


class DataLoader:
    """Reads quandles, groups, matrices and tower descriptors; relative paths fall back to data/"""

    def __init__(self, data_dir: PathLike = DATA_DIR):
        self.data_dir = Path(data_dir)

    def resolve(self, path: PathLike, base: PathLike = None) -> Path:
        candidates = [Path(path)]
        if base is not None:
            candidates.insert(0, Path(base) / path)
        candidates.append(self.data_dir / path)
        for candidate in candidates:
            if candidate.exists():
                return candidate
        raise FormatError(f"file not found: {path}", witness=str(path))

    # ------------------------------------------------------------------
    # quandles
    # ------------------------------------------------------------------
    def load_quandle(self, path: PathLike, base: PathLike = None) -> FiniteQuandle:
        path = self.resolve(path, base)
        logger.info("loading quandle %s", path.name)
        if path.suffix == ".json":
            obj = _read_json(path)
            n = _require_int(obj, "n", path)
            op = _int_rows(_require(obj, "op", path), path, "'op'")
            if len(op) != n:
                raise FormatError(f"{path}: 'op' must list {n} rows")
            return validate_quandle(op, name=path.stem)
        return parse_qnd(_read_text(path), source=str(path))

    def save_quandle(self, Q: FiniteQuandle, path: PathLike):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if path.suffix == ".json":
            path.write_text(json.dumps({"n": Q.n, "op": [list(r) for r in Q.table()]}), encoding="utf-8")
        else:
            path.write_text(format_qnd(Q), encoding="utf-8")
        logger.info("saved %r to %s", Q, path)

    # ------------------------------------------------------------------
    # groups and matrices
    # ------------------------------------------------------------------
    def load_group(self, path: PathLike, base: PathLike = None) -> Union[FiniteGroup, PermGroup]:
        """Cayley table {"n", "mul", "id"} or permutation generators {"degree", "generators"}"""
        path = self.resolve(path, base)
        obj = _read_json(path)
        if isinstance(obj, dict) and "mul" in obj:
            mul = _int_rows(obj["mul"], path, "'mul'")
            if len(mul) != _require_int(obj, "n", path):
                raise FormatError(f"{path}: 'mul' must list n rows")
            return validate_group(mul, identity=obj.get("id"), name=path.stem)
        degree = _require_int(obj, "degree", path, minimum=1)
        gens = [Permutation.parse(text, degree) for text in _str_list(obj, "generators", path)]
        return generate(gens, degree=degree, name=obj.get("name", path.stem))

    def load_matrix(self, path: PathLike, base: PathLike = None) -> IntMatrix:
        path = self.resolve(path, base)
        obj = _read_json(path)
        rows, cols = _require_int(obj, "rows", path), _require_int(obj, "cols", path)
        entries = _int_rows(_require(obj, "entries", path), path, "'entries'")
        if len(entries) != rows:
            raise FormatError(f"{path}: expected {rows} rows, got {len(entries)}")
        return IntMatrix.from_rows(entries, cols=cols)

    # ------------------------------------------------------------------
    # towers
    # ------------------------------------------------------------------
    def load_tower(self, path: PathLike) -> QuandleTower:
        path = self.resolve(path)
        return self.build_tower(_read_json(path), base=path.parent)

    def build_tower(self, desc: Dict[str, Any], base: PathLike = None) -> QuandleTower:
        """
        Builder descriptors: tak_zp {p, depth}, tak_zhat {depth}, m_product {depth},
        davis {depth, moduli?}, constant {quandle, depth}, conj {group, depth},
        coset {group, subgroup, h, depth}, product {factors}, disjoint_union {summands};
        or explicit {levels, transitions}.
        """
        if not isinstance(desc, dict):
            raise FormatError("tower descriptor must be an object")
        try:
            return self._build(desc, base)
        except QuandleError:
            raise
        except KeyError as e:
            raise FormatError(f"tower descriptor is missing {e.args[0]!r}", witness=e.args[0])
        except (TypeError, ValueError) as e:
            raise FormatError(f"malformed tower descriptor: {e}", witness=desc.get("builder", "levels"))

    def _build(self, desc: Dict[str, Any], base: PathLike = None) -> QuandleTower:
        if "levels" in desc:
            levels = [self.load_quandle(p, base) for p in _str_list(desc, "levels", "tower descriptor")]
            maps = _int_rows(desc.get("transitions", []), "tower descriptor", "'transitions'")
            return make_tower(levels, maps, name="explicit")

        builder = desc.get("builder")
        depth = _require_int({"depth": 3, **desc}, "depth", "tower descriptor", minimum=1)
        if builder == "tak_zp":
            return tak_tower(zp_group_tower(_require_int(desc, "p", "tower descriptor", minimum=2), depth))
        if builder == "tak_zhat":
            return tak_tower(zhat_tower(depth))
        if builder == "m_product":
            return m_product_tower(depth)
        if builder == "davis":
            return davis_tower(depth, desc.get("moduli"))
        if builder == "constant":
            return constant_tower(self.load_quandle(desc["quandle"], base), depth)
        if builder == "conj":
            return conj_tower(constant_group_tower(self.load_group(desc["group"], base), depth))
        if builder == "coset":
            G = self.load_group(desc["group"], base)
            if not isinstance(G, PermGroup):
                raise FormatError("coset builder needs a permutation group")
            subgroup = _str_list(desc, "subgroup", "tower descriptor")
            H = generate([Permutation.parse(s, G.degree) for s in subgroup], degree=G.degree)
            h = Permutation.parse(desc["h"], G.degree)
            CosetQuandleSpec(G, H, h).check()
            return coset_tower(constant_group_tower(G, depth), [H] * depth, [h] * depth)
        if builder == "product":
            return product_of_towers(*(self.build_tower(d, base) for d in desc["factors"]))
        if builder == "disjoint_union":
            first, second = (self.build_tower(d, base) for d in desc["summands"])
            return disjoint_union_tower(first, second)
        raise FormatError(f"unknown tower builder {builder!r}", witness=builder)


_default_loader = DataLoader()
load_quandle = _default_loader.load_quandle
save_quandle = _default_loader.save_quandle
load_group = _default_loader.load_group
load_matrix = _default_loader.load_matrix
load_tower = _default_loader.load_tower


if __name__ == "__main__":
    loader = DataLoader()
    try:
        tait = loader.load_quandle("tait.qnd")
        print(tait.display_table())
    except QuandleError as e:
        print(f"Error loading quandle: {e}")
