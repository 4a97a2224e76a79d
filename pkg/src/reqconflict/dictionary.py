"""Loading the data definition table.

The file is a two-column CSV::

    Data,Range
    DCU_Type,DCU_1|DCU_2
    SjRequestCond,TRUE|FALSE

Blank lines are skipped and values are case-sensitive.  A data item whose
range is exactly ``{TRUE, FALSE}`` is Boolean; anything else is an
enumeration.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .errors import DuplicateDataName, DuplicateRangeValue, EmptyRange, MalformedRow, UnknownData

HEADER = ("Data", "Range")
BOOLEAN_RANGE = frozenset({"TRUE", "FALSE"})

_IDENT = re.compile(r'[^\s,|"]+')


@dataclass(frozen=True)
class BooleanKind:
    pass


@dataclass(frozen=True)
class EnumKind:
    values: tuple[str, ...]


Kind = BooleanKind | EnumKind


@dataclass(frozen=True)
class DataEntry:
    name: str
    range: tuple[str, ...]

    def __post_init__(self):
        if not self.name or not _IDENT.fullmatch(self.name):
            raise MalformedRow(f"invalid data name {self.name!r}")
        if not self.range:
            raise EmptyRange(f"data {self.name!r} has an empty range")
        for v in self.range:
            if not _IDENT.fullmatch(v):
                raise MalformedRow(f"invalid value {v!r} for data {self.name!r}")
        if len(set(self.range)) != len(self.range):
            raise DuplicateRangeValue(f"data {self.name!r} repeats a range value")

    @property
    def is_boolean(self) -> bool:
        return set(self.range) == BOOLEAN_RANGE

    @property
    def kind(self) -> Kind:
        return BooleanKind() if self.is_boolean else EnumKind(self.range)


class DataDictionary(Mapping[str, DataEntry]):
    """Read-only mapping from data name to :class:`DataEntry`."""

    def __init__(self, entries: Mapping[str, DataEntry] | None = None):
        self._entries = MappingProxyType(dict(entries or {}))

    def __getitem__(self, name: str) -> DataEntry:
        return self._entries[name]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other):
        if isinstance(other, DataDictionary):
            return dict(self._entries) == dict(other._entries)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __repr__(self) -> str:
        return f"DataDictionary({list(self._entries.values())!r})"


def parse_dictionary(text: str) -> DataDictionary:
    """Parse dictionary CSV text, keeping rows and values in declared order."""
    entries: dict[str, DataEntry] = {}
    saw_header = False
    rows = csv.reader(io.StringIO(text, newline=""))
    for row in rows:
        lineno = rows.line_num
        if not any(cell.strip() for cell in row):
            continue
        cells = [cell.strip() for cell in row]
        if not saw_header:
            if tuple(cells) != HEADER:
                raise MalformedRow(f"expected header 'Data,Range', got {','.join(row)!r}", lineno)
            saw_header = True
            continue
        if len(cells) != 2:
            raise MalformedRow(f"expected 2 columns, got {len(cells)}", lineno)
        name, raw_range = cells
        values = tuple(v.strip() for v in raw_range.split("|") if v.strip())
        if not values:
            raise EmptyRange(f"data {name!r} has no values", lineno)
        if name in entries:
            raise DuplicateDataName(f"data {name!r} is defined twice", lineno)
        try:
            entries[name] = DataEntry(name, values)
        except (MalformedRow, DuplicateRangeValue) as exc:
            raise type(exc)(str(exc), lineno) from None
    return DataDictionary(entries)


def dump_dictionary(dictionary: DataDictionary) -> str:
    lines = [",".join(HEADER)]
    lines.extend(f"{e.name},{'|'.join(e.range)}" for e in dictionary.values())
    return "\n".join(lines) + "\n"


def classify(dictionary: DataDictionary, name: str) -> Kind:
    try:
        return dictionary[name].kind
    except KeyError:
        raise UnknownData(name) from None
