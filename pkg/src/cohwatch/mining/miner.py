"""Mine function version histories out of a git repository.

Traversal walks the first-parent chain of the requested rev in topological
order, oldest first, so each retained commit sees exactly one predecessor
state.  For every commit that adds or modifies a scanned source file, the
file content at that commit is parsed and each extracted definition is
appended to its identity's history unless the text is unchanged from the
previous recorded version (no-op touches collapse; A -> B -> A keeps all
three).  Files that fail extraction are recorded in a skip log and never
abort the run.
"""

import logging
import subprocess
from dataclasses import dataclass

from ..cpp import ExtractionError, extract_functions
from .identity import FunctionIdentity, identity_key
from .store import FunctionHistoryStore, FunctionVersion

log = logging.getLogger(__name__)

DEFAULT_EXTENSIONS = (".cpp", ".cc", ".cxx", ".h", ".hpp")


class MiningError(RuntimeError):
    """The repository could not be read at all (fatal)."""


@dataclass(frozen=True)
class MiningConfig:
    extensions: tuple = DEFAULT_EXTENSIONS
    rev: str = "HEAD"


@dataclass(frozen=True)
class SkipEntry:
    path: str
    commit: str
    reason: str

    def __str__(self):
        return f"{self.path}@{self.commit}: {self.reason}"


def _git(repo, *args):
    proc = subprocess.run(
        ["git", "-C", repo, *args],
        capture_output=True,
    )
    if proc.returncode != 0:
        detail = proc.stderr.decode("utf-8", "replace").strip()
        raise MiningError(f"git {' '.join(args[:2])} failed: {detail}")
    return proc.stdout


class _CatFileBatch:
    """Persistent `git cat-file --batch` channel for blob reads."""

    def __init__(self, repo):
        self._proc = subprocess.Popen(
            ["git", "-C", repo, "cat-file", "--batch"],
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
        )

    def read(self, spec):
        """Bytes of `commit:path`, or None when unreadable."""
        self._proc.stdin.write(spec.encode("utf-8") + b"\n")
        self._proc.stdin.flush()
        header = self._proc.stdout.readline()
        if not header:
            return None
        parts = header.split()
        if len(parts) < 3 or parts[1] != b"blob":
            return None  # "missing", "ambiguous", or a non-blob object
        size = int(parts[2])
        data = self._proc.stdout.read(size)
        self._proc.stdout.read(1)  # trailing newline
        return data

    def close(self):
        try:
            self._proc.stdin.close()
            self._proc.wait(timeout=10)
        except Exception:
            self._proc.kill()


def _log_blocks(repo, rev):
    """Yield (commit, time, [changed paths]) along the first-parent chain."""
    out = _git(
        repo, "log", "--first-parent", "--topo-order", "--reverse",
        "--diff-filter=AM", "--no-renames", "--name-only",
        "--format=%x01%H %ct", rev, "--",
    )
    blocks = []
    for chunk in out.decode("utf-8", "replace").split("\x01"):
        if not chunk.strip():
            continue
        lines = chunk.split("\n")
        head = lines[0].split()
        commit, ctime = head[0], int(head[1])
        paths = [ln for ln in lines[1:] if ln.strip()]
        blocks.append((commit, ctime, paths))
    return blocks


def mine_repository(repo_path, config=None):
    """Build a FunctionHistoryStore from a repository's default history.

    Returns the store; extraction failures are collected on
    ``store.skipped`` as SkipEntry records.  Raises MiningError only when
    the repository itself is unreadable.
    """
    cfg = config or MiningConfig()
    _git(repo_path, "rev-parse", "--verify", cfg.rev)

    store = FunctionHistoryStore()
    store.skipped = []
    last_body = {}
    exts = tuple(cfg.extensions)
    blocks = _log_blocks(repo_path, cfg.rev)
    batch = _CatFileBatch(repo_path)
    try:
        for commit, ctime, paths in blocks:
            for path in paths:
                if not path.endswith(exts) or "\n" in path:
                    continue
                data = batch.read(f"{commit}:{path}")
                if data is None:
                    store.skipped.append(
                        SkipEntry(path, commit, "unreadable at commit"))
                    continue
                try:
                    text = data.decode("utf-8")
                except UnicodeDecodeError:
                    store.skipped.append(
                        SkipEntry(path, commit, "not valid UTF-8"))
                    continue
                try:
                    functions = extract_functions(text, path)
                except ExtractionError as exc:
                    store.skipped.append(
                        SkipEntry(path, commit,
                                  f"extraction failed: {exc.reason}"))
                    continue
                seen = set()
                for fn in functions:
                    ident = FunctionIdentity(
                        name=fn.qualified_name,
                        arg_types=fn.arg_types,
                        file_path=path,
                    )
                    key = identity_key(ident)
                    if key in seen:
                        store.skipped.append(SkipEntry(
                            path, commit,
                            f"duplicate definition of {fn.qualified_name}"))
                        continue
                    seen.add(key)
                    if last_body.get(key) == fn.full_text:
                        continue
                    store.add_version(FunctionVersion(
                        key=key,
                        commit_id=commit,
                        commit_time=ctime,
                        body_text=fn.full_text,
                        body_line_count=fn.body_line_count,
                        token_estimate=len(fn.full_text.split()),
                    ))
                    last_body[key] = fn.full_text
    finally:
        batch.close()

    # Normalize version order to (commit_time, commit_id); traversal order
    # already matches except when committer clocks collide.  Re-collapse
    # adjacent duplicates in case the sort reordered same-second commits.
    for hist in store.histories.values():
        hist.versions.sort(key=lambda v: (v.commit_time, v.commit_id))
        deduped = []
        for version in hist.versions:
            if deduped and deduped[-1].body_text == version.body_text:
                continue
            deduped.append(version)
        hist.versions = deduped

    log.info(
        "mined %d histories, %d versions, %d skips",
        len(store), store.version_count(), len(store.skipped),
    )
    return store


__all__ = [
    "DEFAULT_EXTENSIONS",
    "MiningConfig",
    "MiningError",
    "SkipEntry",
    "mine_repository",
]
