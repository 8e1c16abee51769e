"""Directional check on real history with a real fill-mask checkpoint.

Random tiny weights cannot say anything about how cohesion reacts to
injected code, and this suite runs offline, so the check is gated behind
two environment variables pointing at real resources:

* ``COHWATCH_REAL_MODEL_DIR``: a fill-mask checkpoint directory (any
  code model with a mask token works).
* ``COHWATCH_REAL_REPO_DIR``: one or more git checkouts with C++
  history to mine, separated by ``os.pathsep``.
* ``COHWATCH_REAL_DEVICE`` (optional): torch device, default cpu.

With them set, the test mines consecutive function version pairs, scores
them through a live server, injects a snippet at the beginning of each
older version, and asserts direction only: injected drops exceed benign
drift (one-sided sign test, p < 0.05), and the high-cohesion subset
shows the larger injected drop.  Budget: tens of minutes on a GPU,
a few hours on CPU.
"""

import os
import random
import socket
import threading
import time

import pytest

MODEL_ENV = "COHWATCH_REAL_MODEL_DIR"
REPO_ENV = "COHWATCH_REAL_REPO_DIR"
DEVICE_ENV = "COHWATCH_REAL_DEVICE"

pytestmark = pytest.mark.skipif(
    not (os.environ.get(MODEL_ENV) and os.environ.get(REPO_ENV)),
    reason=f"set {MODEL_ENV} and {REPO_ENV} to run the directional check")

cohwatch = pytest.importorskip("cohwatch")
uvicorn = pytest.importorskip("uvicorn")

from cohwatch.cpp.extract import ExtractionError, extract_functions
from cohwatch.evaluate import HIGH_COHESION_NPC
from cohwatch.inject import InjectionError
from cohwatch.inject.injector import inject
from cohwatch.inject.snippets import load_snippets
from cohwatch.metrics import one_sided_sign_test
from cohwatch.mining.miner import mine_repository
from cohwatch.scoring.backends import BackendError, RemoteBackend
from cohwatch.scoring.scorer import score_function

from model_server.app import create_app
from model_server.config import ServerConfig

# Distinct functions to score; one consecutive pair per function key.
SAMPLE = 200
SAMPLE_SEED = 20240817
LOAD_DEADLINE = 900.0


def _free_port():
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture(scope="module")
def backend():
    config = ServerConfig(model=os.environ[MODEL_ENV],
                          device=os.environ.get(DEVICE_ENV, "cpu"))
    app = create_app(config=config)
    port = _free_port()
    server = uvicorn.Server(uvicorn.Config(
        app, host="127.0.0.1", port=port, log_level="warning"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    remote = RemoteBackend(f"http://127.0.0.1:{port}", timeout=300.0,
                           retries=0)
    deadline = time.monotonic() + LOAD_DEADLINE
    while True:
        try:
            remote.info()
            break
        except BackendError:
            if time.monotonic() > deadline:
                pytest.fail(f"checkpoint did not load within "
                            f"{LOAD_DEADLINE:.0f}s")
            time.sleep(2.0)
    yield remote
    server.should_exit = True
    thread.join(timeout=10)


def _single_function(body_text):
    try:
        fns = extract_functions(body_text)
    except ExtractionError:
        return None
    return fns[0] if len(fns) == 1 else None


def _eligible_pairs():
    """One (v1, v2) consecutive pair per mined function key."""
    pairs = []
    for repo in os.environ[REPO_ENV].split(os.pathsep):
        store = mine_repository(repo)
        seen = set()
        for key, i, v1, v2 in store.list_version_pairs():
            if key in seen:
                continue
            f1 = _single_function(v1.body_text)
            f2 = _single_function(v2.body_text)
            if f1 is None or f2 is None:
                continue
            seen.add(key)
            pairs.append((f"{repo}::{key}", f1, f2))
    pairs.sort(key=lambda item: item[0])
    return pairs


@pytest.fixture(scope="module")
def cohesion_deltas(backend):
    """Rows of (npc1, benign_cd, injected_cd) over sampled real pairs."""
    pairs = _eligible_pairs()
    if len(pairs) < SAMPLE:
        pytest.skip(f"only {len(pairs)} scoreable pairs mined; "
                    f"need {SAMPLE}")
    if len(pairs) > SAMPLE:
        pairs = sorted(random.Random(SAMPLE_SEED).sample(pairs, SAMPLE),
                       key=lambda item: item[0])
    snippets = load_snippets()
    rows = []
    for idx, (_, f1, f2) in enumerate(pairs):
        try:
            injected = inject(f1, snippets[idx % len(snippets)],
                              "beginning")
            tampered = _single_function(injected.injected_text)
            if tampered is None:
                continue
        except InjectionError:
            continue
        npc1 = score_function(f1, backend).npc
        npc2 = score_function(f2, backend).npc
        npci = score_function(tampered, backend).npc
        rows.append((npc1, npc1 - npc2, npc1 - npci))
    if len(rows) < SAMPLE:
        pytest.skip(f"only {len(rows)} pairs survived injection; "
                    f"need {SAMPLE}")
    return rows


def test_injected_drop_exceeds_benign_drift(cohesion_deltas):
    benign = [b for _, b, _ in cohesion_deltas]
    injected = [i for _, _, i in cohesion_deltas]
    assert sum(injected) / len(injected) > sum(benign) / len(benign)
    decided = [(i, b) for i, b in zip(injected, benign) if i != b]
    wins = sum(1 for i, b in decided if i > b)
    assert one_sided_sign_test(wins, len(decided)) < 0.05


def test_high_cohesion_subset_amplifies_the_drop(cohesion_deltas):
    injected = [i for _, _, i in cohesion_deltas]
    subset = [i for npc1, _, i in cohesion_deltas
              if npc1 > HIGH_COHESION_NPC]
    if not subset or len(subset) == len(injected):
        pytest.skip(f"high-cohesion subset has {len(subset)} of "
                    f"{len(injected)} pairs; no contrast to test")
    assert sum(subset) / len(subset) > sum(injected) / len(injected)
