"""Score persistence: JSON Lines keyed by (function key, version index).

The score file is append-friendly so an interrupted scoring run can resume
without redoing backend calls: rows already present are simply skipped on
the next run.
"""

import json
import os
from dataclasses import dataclass

from .confidence import CohesionScore


@dataclass(frozen=True)
class ScoreRow:
    key: str
    version: int              # index within the function's history
    commit_id: str
    body_line_count: int
    score: CohesionScore
    backend_id: str

    def to_json(self):
        return json.dumps({
            "key": self.key,
            "version": self.version,
            "commit": self.commit_id,
            "lines": self.body_line_count,
            "per_n": list(self.score.per_n),
            "npc": self.score.npc,
            "otc": self.score.otc,
            "backend": self.backend_id,
        }, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, line):
        row = json.loads(line)
        score = CohesionScore(
            per_n=tuple(float(x) for x in row["per_n"]),
            npc=float(row["npc"]),
            otc=int(row["otc"]),
        )
        return cls(
            key=row["key"],
            version=int(row["version"]),
            commit_id=row["commit"],
            body_line_count=int(row["lines"]),
            score=score,
            backend_id=row.get("backend", "unknown"),
        )


def score_key(key, version):
    return (key, version)


def load_scores(path_or_fh):
    """Read score rows into a dict keyed by (function key, version index)."""
    if isinstance(path_or_fh, (str, bytes, os.PathLike)):
        with open(path_or_fh, "r", encoding="utf-8") as fh:
            return _read(fh)
    return _read(path_or_fh)


def _read(fh):
    scores = {}
    for lineno, line in enumerate(fh, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            row = ScoreRow.from_json(line)
        except (ValueError, KeyError, TypeError) as exc:
            raise ValueError(f"score file line {lineno}: {exc}") from None
        scores[score_key(row.key, row.version)] = row
    return scores


__all__ = ["ScoreRow", "load_scores", "score_key"]
