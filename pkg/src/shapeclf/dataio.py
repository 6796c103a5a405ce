"""Tabular datasets with ARFF and CSV interchange, and stratified fold plans.

A :class:`Dataset` keeps numeric attributes in a float matrix ``X`` and the
nominal class (always the last attribute) as integer indices ``y``.
"""

from __future__ import annotations

import csv
import io
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .prng import Prng
from .shapefeat import FEATURE_NAMES

FEATURE_CSV_HEADER = ("id",) + FEATURE_NAMES + ("class",)


class DataFormatError(ValueError):
    """Parse failure; ``line`` (1-based) and ``column`` locate it when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Attribute:
    name: str
    values: tuple[str, ...] | None = None  # None for numeric

    def __post_init__(self):
        if self.values is not None:
            if not self.values:
                raise ValueError(f"nominal attribute {self.name!r} has no values")
            if len(set(self.values)) != len(self.values):
                raise ValueError(f"nominal attribute {self.name!r} repeats a value")

    @property
    def is_nominal(self) -> bool:
        return self.values is not None


@dataclass(frozen=True, eq=False)
class Dataset:
    """Instances over numeric attributes plus a nominal class.

    ``attributes`` lists the input attributes followed by the class
    attribute. ``ids`` is optional per-row metadata (e.g. image file names)
    that never takes part in learning.
    """

    relation: str
    attributes: tuple[Attribute, ...]
    X: np.ndarray
    y: np.ndarray
    ids: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        if not self.attributes or not self.attributes[-1].is_nominal:
            raise ValueError("the last attribute must be the nominal class")
        if any(a.is_nominal for a in self.attributes[:-1]):
            raise ValueError("only numeric input attributes are supported")
        X = np.array(self.X, dtype=float).reshape(-1, len(self.attributes) - 1)
        y = np.array(self.y, dtype=np.int64).reshape(-1)
        if len(X) != len(y):
            raise ValueError(f"{len(X)} feature rows but {len(y)} class labels")
        if y.size and (y.min() < 0 or y.max() >= len(self.classes)):
            raise ValueError("class index out of range")
        if self.ids is not None and len(self.ids) != len(y):
            raise ValueError("ids must have one entry per instance")
        X.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def classes(self) -> tuple[str, ...]:
        return self.attributes[-1].values

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes[:-1])

    def __len__(self) -> int:
        return len(self.y)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.relation == other.relation
            and self.attributes == other.attributes
            and self.ids == other.ids
            and np.array_equal(self.X, other.X)
            and np.array_equal(self.y, other.y)
        )

    def take(self, indices) -> "Dataset":
        """Sub-dataset (rows may repeat) sharing the attribute declarations."""
        idx = np.asarray(indices, dtype=np.int64)
        ids = None if self.ids is None else tuple(self.ids[i] for i in idx)
        return Dataset(self.relation, self.attributes, self.X[idx], self.y[idx], ids)


def format_number(value: float) -> str:
    """Shortest decimal that reads back as the same double; integers lose the ``.0``."""
    value = float(value)
    if math.isfinite(value) and value.is_integer() and abs(value) < 2**53:
        return str(int(value))
    return repr(value)


# -- ARFF ------------------------------------------------------------------

_NUMERIC_KINDS = {"numeric", "real", "integer"}
_BARE = re.compile(r"^[^\s,{}'\"%]+$")


def _quote(token: str) -> str:
    if _BARE.match(token) and token != "?":
        return token
    return "'" + token.replace("\\", "\\\\").replace("'", "\\'") + "'"


def _split_tokens(text: str, lineno: int, sep: str = ",") -> list[str]:
    """Split on ``sep`` honouring single/double quotes with backslash escapes."""
    tokens: list[str] = []
    buf: list[str] = []
    i, n = 0, len(text)
    quoted = False
    while i < n:
        c = text[i]
        if c in "'\"" and not "".join(buf).strip():
            quote, j = c, i + 1
            buf = []
            while j < n and text[j] != quote:
                if text[j] == "\\" and j + 1 < n:
                    j += 1
                buf.append(text[j])
                j += 1
            if j >= n:
                raise DataFormatError("unterminated quote", lineno)
            quoted = True
            i = j + 1
            continue
        if c == sep:
            tokens.append("".join(buf) if quoted else "".join(buf).strip())
            buf, quoted = [], False
        elif not (quoted and c.isspace()):
            if quoted:
                raise DataFormatError(f"unexpected text after quoted token: {c!r}", lineno)
            buf.append(c)
        i += 1
    tokens.append("".join(buf) if quoted else "".join(buf).strip())
    return tokens


def _read_name(rest: str, lineno: int) -> tuple[str, str]:
    """Split an attribute/relation name (possibly quoted) off the front of ``rest``."""
    rest = rest.strip()
    if not rest:
        raise DataFormatError("missing name", lineno)
    if rest[0] in "'\"":
        quote, j, buf = rest[0], 1, []
        while j < len(rest) and rest[j] != quote:
            if rest[j] == "\\" and j + 1 < len(rest):
                j += 1
            buf.append(rest[j])
            j += 1
        if j >= len(rest):
            raise DataFormatError("unterminated quote", lineno)
        return "".join(buf), rest[j + 1 :].strip()
    parts = rest.split(None, 1)
    return parts[0], parts[1].strip() if len(parts) > 1 else ""


def parse_arff(text: str) -> Dataset:
    """Parse the dense ARFF subset: numeric/real/integer and nominal attributes.

    Raises
    ------
    DataFormatError
        On an unknown attribute kind, a ``?`` missing value, a row of the
        wrong arity, an undeclared nominal value, a non-numeric number, or a
        missing ``@data`` section. The message carries the line number.
    """
    relation = ""
    attributes: list[Attribute] = []
    rows: list[tuple[int, list[str]]] = []
    in_data = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if in_data:
            rows.append((lineno, _split_tokens(line, lineno)))
            continue
        keyword, _, rest = line.replace("\t", " ").partition(" ")
        keyword = keyword.lower()
        if keyword == "@relation":
            relation, _ = _read_name(rest, lineno)
        elif keyword == "@attribute":
            name, kind = _read_name(rest, lineno)
            if kind.startswith("{"):
                if not kind.endswith("}"):
                    raise DataFormatError(f"unclosed nominal set for {name!r}", lineno)
                values = tuple(_split_tokens(kind[1:-1], lineno))
                try:
                    attributes.append(Attribute(name, values))
                except ValueError as exc:
                    raise DataFormatError(str(exc), lineno) from None
            elif kind.lower() in _NUMERIC_KINDS:
                attributes.append(Attribute(name))
            else:
                raise DataFormatError(f"unknown attribute kind {kind!r} for {name!r}", lineno)
        elif keyword == "@data":
            in_data = True
        else:
            raise DataFormatError(f"unexpected header line {line!r}", lineno)
    if not in_data:
        raise DataFormatError("no @data section")
    if not attributes or not attributes[-1].is_nominal:
        raise DataFormatError("the last attribute must be nominal")
    if any(a.is_nominal for a in attributes[:-1]):
        raise DataFormatError("only numeric input attributes are supported")

    X, y = [], []
    lookup = {v: i for i, v in enumerate(attributes[-1].values)}
    for lineno, tokens in rows:
        if len(tokens) != len(attributes):
            raise DataFormatError(f"expected {len(attributes)} values, found {len(tokens)}", lineno)
        for col, tok in enumerate(tokens, start=1):
            if tok == "?":
                raise DataFormatError("missing values are not supported", lineno, col)
        X.append([_to_float(t, lineno, col) for col, t in enumerate(tokens[:-1], start=1)])
        if tokens[-1] not in lookup:
            raise DataFormatError(f"class value {tokens[-1]!r} not declared", lineno, len(tokens))
        y.append(lookup[tokens[-1]])
    return Dataset(relation, tuple(attributes), np.array(X, dtype=float), np.array(y, dtype=np.int64))


def _to_float(token: str, line: int, column: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise DataFormatError(f"non-numeric value {token!r}", line, column) from None


def write_arff(ds: Dataset) -> str:
    out = [f"@relation {_quote(ds.relation or 'data')}", ""]
    for attr in ds.attributes:
        if attr.is_nominal:
            kind = "{" + ",".join(_quote(v) for v in attr.values) + "}"
        else:
            kind = "numeric"
        out.append(f"@attribute {_quote(attr.name)} {kind}")
    out += ["", "@data"]
    classes = ds.classes
    for row, label in zip(ds.X, ds.y):
        out.append(",".join([format_number(v) for v in row] + [_quote(classes[label])]))
    return "\n".join(out) + "\n"


# -- CSV -------------------------------------------------------------------


def parse_csv(text: str, relation: str = "features") -> Dataset:
    """Parse a headed CSV whose last column is the class.

    A leading ``id`` column is kept as row metadata. Class values are
    declared in order of first appearance.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataFormatError("empty CSV, expected a header line", 1) from None
    has_id = bool(header) and header[0] == "id"
    names = header[1:] if has_id else header
    if len(names) < 1:
        raise DataFormatError("header needs at least a class column", 1)

    X, labels, ids = [], [], []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DataFormatError(f"expected {len(header)} fields, found {len(row)}", lineno)
        if has_id:
            ids.append(row[0])
            row = row[1:]
        offset = 2 if has_id else 1
        X.append([_to_float(t, lineno, col) for col, t in enumerate(row[:-1], start=offset)])
        labels.append(row[-1])

    classes = tuple(dict.fromkeys(labels)) or ("?",)
    lookup = {c: i for i, c in enumerate(classes)}
    attributes = tuple(Attribute(n) for n in names[:-1]) + (Attribute(names[-1], classes),)
    X_arr = np.array(X, dtype=float).reshape(len(X), len(names) - 1)
    return Dataset(
        relation,
        attributes,
        X_arr,
        np.array([lookup[c] for c in labels], dtype=np.int64),
        tuple(ids) if has_id else None,
    )


def write_csv(ds: Dataset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = [a.name for a in ds.attributes]
    writer.writerow((["id"] if ds.ids is not None else []) + header)
    for i, (row, label) in enumerate(zip(ds.X, ds.y)):
        values = [format_number(v) for v in row] + [ds.classes[label]]
        writer.writerow(([ds.ids[i]] if ds.ids is not None else []) + values)
    return buf.getvalue()


def load_dataset(path) -> Dataset:
    """Read ``.arff`` or ``.csv`` by extension."""
    path = str(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.lower().endswith(".arff"):
        return parse_arff(text)
    return parse_csv(text)


# -- folds -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FoldPlan:
    k: int
    assignment: np.ndarray  # fold id per instance
    seed: int

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FoldPlan)
            and (self.k, self.seed) == (other.k, other.seed)
            and np.array_equal(self.assignment, other.assignment)
        )

    def split(self, fold: int) -> tuple[np.ndarray, np.ndarray]:
        """``(train_indices, test_indices)`` for one fold, each ascending."""
        test = np.flatnonzero(self.assignment == fold)
        train = np.flatnonzero(self.assignment != fold)
        return train, test


def stratified_folds(ds: Dataset | np.ndarray, k: int = 10, seed: int = 42) -> FoldPlan:
    """Deal each class's shuffled instances round-robin over ``k`` folds.

    Class ``c`` is shuffled with the ``("folds", c)`` stream and dealt
    starting at fold ``c mod k``, so per-class fold sizes differ by at most
    one and the plan depends only on the labels, ``k`` and ``seed``.
    """
    y = ds.y if isinstance(ds, Dataset) else np.asarray(ds, dtype=np.int64)
    if k < 2:
        raise ValueError(f"need at least 2 folds, got {k}")
    if k > len(y):
        raise ValueError(f"{k} folds requested for {len(y)} instances")
    assignment = np.empty(len(y), dtype=np.int64)
    n_classes = int(y.max()) + 1 if len(y) else 0
    for c in range(n_classes):
        members = np.flatnonzero(y == c).tolist()
        Prng.stream(seed, "folds", c).shuffle(members)
        for pos, idx in enumerate(members):
            assignment[idx] = (c + pos) % k
    assignment.flags.writeable = False
    return FoldPlan(k=k, assignment=assignment, seed=seed)
