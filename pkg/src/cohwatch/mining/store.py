"""Persistent store for mined function version histories.

The on-disk format is JSON Lines, one version per line, with the frozen
key set {key, commit, time, body, lines, tokens}.  Rows are grouped by
function key and ordered oldest-first within a key; files are written with
keys sorted so that mining the same repository twice yields byte-identical
stores.
"""

import io
import json
import os
from dataclasses import dataclass, field


class StoreFormatError(ValueError):
    """A store file line could not be parsed."""


@dataclass(frozen=True)
class FunctionVersion:
    key: str
    commit_id: str
    commit_time: int          # unix epoch seconds, UTC
    body_text: str            # full definition text, signature included
    body_line_count: int
    token_estimate: int

    def to_row(self):
        return {
            "key": self.key,
            "commit": self.commit_id,
            "time": self.commit_time,
            "body": self.body_text,
            "lines": self.body_line_count,
            "tokens": self.token_estimate,
        }

    @classmethod
    def from_row(cls, row):
        return cls(
            key=row["key"],
            commit_id=row["commit"],
            commit_time=int(row["time"]),
            body_text=row["body"],
            body_line_count=int(row["lines"]),
            token_estimate=int(row["tokens"]),
        )


@dataclass
class FunctionHistory:
    key: str
    versions: list = field(default_factory=list)

    def __len__(self):
        return len(self.versions)


class FunctionHistoryStore:
    """All histories mined from one repository, addressable by key."""

    def __init__(self):
        self.histories = {}

    def __len__(self):
        return len(self.histories)

    def __contains__(self, key):
        return key in self.histories

    def __getitem__(self, key):
        return self.histories[key]

    def add_version(self, version):
        hist = self.histories.get(version.key)
        if hist is None:
            hist = FunctionHistory(key=version.key)
            self.histories[version.key] = hist
        hist.versions.append(version)

    def iter_histories(self):
        for key in sorted(self.histories):
            yield self.histories[key]

    def version_count(self):
        return sum(len(h) for h in self.histories.values())

    def pair_count(self):
        return sum(max(0, len(h) - 1) for h in self.histories.values())

    def list_version_pairs(self):
        """Consecutive (older, newer) version pairs, sorted by key.

        A history with L versions contributes L-1 pairs; single-version
        histories contribute none.
        """
        pairs = []
        for hist in self.iter_histories():
            vs = hist.versions
            for i in range(len(vs) - 1):
                pairs.append((hist.key, i, vs[i], vs[i + 1]))
        return pairs


def save_store(store, path_or_fh):
    """Write a store as JSON Lines; deterministic for identical contents."""
    if isinstance(path_or_fh, (str, bytes, os.PathLike)):
        with open(path_or_fh, "w", encoding="utf-8") as fh:
            _write_rows(store, fh)
    else:
        _write_rows(store, path_or_fh)


def _write_rows(store, fh):
    for hist in store.iter_histories():
        for version in hist.versions:
            fh.write(json.dumps(version.to_row(), sort_keys=True,
                                ensure_ascii=False))
            fh.write("\n")


def load_store(path_or_fh):
    """Read a store from JSON Lines; malformed lines raise StoreFormatError."""
    if isinstance(path_or_fh, (str, bytes, os.PathLike)):
        with open(path_or_fh, "r", encoding="utf-8") as fh:
            return _read_rows(fh)
    return _read_rows(path_or_fh)


def _read_rows(fh):
    store = FunctionHistoryStore()
    for lineno, line in enumerate(fh, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            row = json.loads(line)
            version = FunctionVersion.from_row(row)
        except (ValueError, KeyError, TypeError) as exc:
            raise StoreFormatError(f"line {lineno}: {exc}") from None
        store.add_version(version)
    return store


def dumps_store(store):
    """Store serialized to a string (convenience for stdout streaming)."""
    buf = io.StringIO()
    _write_rows(store, buf)
    return buf.getvalue()


__all__ = [
    "FunctionHistory",
    "FunctionHistoryStore",
    "FunctionVersion",
    "StoreFormatError",
    "dumps_store",
    "load_store",
    "save_store",
]
