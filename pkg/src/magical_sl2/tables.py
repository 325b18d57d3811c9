"""Loaders for the shipped plain-text data files.

Every file holds whitespace-separated records, one per line; ``#`` starts a
comment.  Set ``MAGICAL_DATA_DIR`` to read the files from another directory.

weighted_diagrams.txt   type rank label w1,...,wr
real_forms.txt          type rank dim_h dim_zh label
tempered.txt            type rank dim_h dim_zh label h dual
centralizer_reps.txt    case type rank real_form g0 c dim_c v0 dim_v0 r

A label of the form ``a=b`` names one real form under isomorphic aliases.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path


def data_dir() -> Path:
    env = os.environ.get("MAGICAL_DATA_DIR")
    return Path(env) if env else Path(__file__).with_name("data")


def _records(name: str):
    path = data_dir() / name
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                yield line.split()


@dataclass(frozen=True)
class DiagramRecord:
    kind: str
    rank: int
    label: str
    weights: tuple[int, ...]


@dataclass(frozen=True)
class RealFormRecord:
    kind: str
    rank: int
    dim_h: int
    dim_zh: int
    label: str

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.label.split("="))

    @property
    def name(self) -> str:
        return self.names[0]


@dataclass(frozen=True)
class TemperedRecord:
    kind: str
    rank: int
    dim_h: int
    dim_zh: int
    label: str
    h: str
    dual: str


@dataclass(frozen=True)
class CentralizerRepRecord:
    case: int
    kind: str
    rank: int
    real_form: str
    g0: str
    c: str
    dim_c: int
    v0: str
    dim_v0: int
    r: int

    @property
    def v_label(self) -> str:
        ones = "1" if self.r == 1 else f"1^{self.r}"
        return ones if self.v0 == "0" else f"{self.v0}+{ones}"


@lru_cache(maxsize=None)
def _load_diagrams(directory: str) -> tuple[DiagramRecord, ...]:
    return tuple(
        DiagramRecord(r[0].upper(), int(r[1]), r[2], tuple(int(w) for w in r[3].split(",")))
        for r in _records("weighted_diagrams.txt")
    )


@lru_cache(maxsize=None)
def _load_real_forms(directory: str) -> tuple[RealFormRecord, ...]:
    return tuple(
        RealFormRecord(r[0].upper(), int(r[1]), int(r[2]), int(r[3]), r[4]) for r in _records("real_forms.txt")
    )


@lru_cache(maxsize=None)
def _load_tempered(directory: str) -> tuple[TemperedRecord, ...]:
    return tuple(
        TemperedRecord(r[0].upper(), int(r[1]), int(r[2]), int(r[3]), r[4], r[5], r[6])
        for r in _records("tempered.txt")
    )


@lru_cache(maxsize=None)
def _load_centralizer_reps(directory: str) -> tuple[CentralizerRepRecord, ...]:
    return tuple(
        CentralizerRepRecord(
            int(r[0]), r[1].upper(), int(r[2]), r[3], r[4], r[5], int(r[6]), r[7], int(r[8]), int(r[9])
        )
        for r in _records("centralizer_reps.txt")
    )


def diagrams(kind: str | None = None, rank: int | None = None) -> list[DiagramRecord]:
    recs = _load_diagrams(str(data_dir()))
    return [r for r in recs if (kind is None or r.kind == kind.upper()) and (rank is None or r.rank == rank)]


def diagram(kind: str, rank: int, label: str) -> DiagramRecord:
    for r in diagrams(kind, rank):
        if r.label == label:
            return r
    raise KeyError(f"no diagram {label!r} for {kind}{rank}")


def real_forms(kind: str, rank: int) -> list[RealFormRecord]:
    return [r for r in _load_real_forms(str(data_dir())) if r.kind == kind.upper() and r.rank == rank]


def tempered_rows() -> list[TemperedRecord]:
    return list(_load_tempered(str(data_dir())))


def centralizer_reps(kind: str, rank: int) -> list[CentralizerRepRecord]:
    return [r for r in _load_centralizer_reps(str(data_dir())) if r.kind == kind.upper() and r.rank == rank]
