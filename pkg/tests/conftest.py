"""Shared fixtures: seeded git repositories and fixture function corpora."""

import subprocess
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"

# ---------------------------------------------------------------------------
# git repository builder
# ---------------------------------------------------------------------------


class RepoBuilder:
    """Builds throwaway git repositories with pinned, increasing times."""

    def __init__(self, root):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._clock = 1700000000
        self._git("init", "-q", "-b", "main")

    def _git(self, *argv, check=True):
        env = {
            "GIT_AUTHOR_NAME": "fixture",
            "GIT_AUTHOR_EMAIL": "fixture@example.com",
            "GIT_COMMITTER_NAME": "fixture",
            "GIT_COMMITTER_EMAIL": "fixture@example.com",
            "GIT_AUTHOR_DATE": f"{self._clock} +0000",
            "GIT_COMMITTER_DATE": f"{self._clock} +0000",
            "HOME": str(self.root),
            "GIT_CONFIG_GLOBAL": "/dev/null",
            "GIT_CONFIG_SYSTEM": "/dev/null",
        }
        return subprocess.run(
            ["git", "-C", str(self.root), "-c", "commit.gpgsign=false",
             *argv],
            env=env, check=check, capture_output=True, text=True)

    def commit(self, files, message="change", remove=()):
        """Write/delete files and commit; each commit gets a later time."""
        self._clock += 61
        for rel, text in files.items():
            path = self.root / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            if isinstance(text, bytes):
                path.write_bytes(text)
            else:
                path.write_text(text, encoding="utf-8")
        for rel in remove:
            self._git("rm", "-q", rel)
        self._git("add", "-A")
        self._git("commit", "-q", "-m", message)
        return self.head()

    def head(self):
        return self._git("rev-parse", "HEAD").stdout.strip()

    def checkout(self, rev, new_branch=None):
        self._clock += 61
        if new_branch:
            self._git("checkout", "-q", "-b", new_branch, rev)
        else:
            self._git("checkout", "-q", rev)

    def merge(self, branch, message="merge"):
        self._clock += 61
        self._git("merge", "-q", "--no-ff", "-m", message, branch)
        return self.head()


@pytest.fixture
def repo_builder(tmp_path):
    def build(name="repo"):
        return RepoBuilder(tmp_path / name)
    return build


# ---------------------------------------------------------------------------
# fixture corpora
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def fifty_functions():
    from cohwatch.cpp import extract_functions

    text = (DATA_DIR / "fifty_functions.cpp").read_text(encoding="utf-8")
    fns = extract_functions(text)
    assert len(fns) == 50, f"fixture drifted: {len(fns)} functions"
    return fns


@pytest.fixture(scope="session")
def snippet_corpus():
    from cohwatch.inject import load_snippets

    snippets, skipped = load_snippets()
    assert not skipped
    return snippets
