"""Fill-mask probability backends.

Two implementations of the same small contract:

* ``MockBackend`` produces probabilities as a pure deterministic function
  of the masked text, so the whole pipeline can run hermetically and
  reproducibly with no model anywhere near it.
* ``RemoteBackend`` speaks the HTTP wire protocol of a model server
  (``GET /v1/info``, ``POST /v1/fill_mask``).
"""

import hashlib
import time
from dataclasses import dataclass

import requests


class BackendError(RuntimeError):
    """The backend failed or returned something outside the contract."""

    def __init__(self, message, unreachable=False):
        super().__init__(message)
        self.unreachable = unreachable


@dataclass(frozen=True)
class BackendInfo:
    mask_token: str
    max_context: int          # model context window, in model tokens
    model_id: str


@dataclass(frozen=True)
class FillMaskResult:
    probabilities: tuple      # top-1 probability per mask, in (0, 1]
    tokens: tuple             # predicted token text per mask
    model_id: str


def _check_result(result, mask_count):
    if len(result.probabilities) != mask_count or \
            len(result.tokens) != mask_count:
        raise BackendError(
            f"backend returned {len(result.probabilities)} probabilities "
            f"and {len(result.tokens)} tokens for mask_count={mask_count}")
    for p in result.probabilities:
        if not (0.0 < p <= 1.0):
            raise BackendError(f"backend probability out of (0, 1]: {p!r}")
    return result


class MockBackend:
    """Deterministic stand-in for a model server.

    Each probability is derived from a cryptographic hash of the masked
    text, the mask index, and the mask count, mapped into (0.01, 0.99).
    Identical inputs always reproduce identical outputs; one changed body
    character reshuffles everything.
    """

    def __init__(self, seed=0):
        self.seed = seed
        self.calls = 0

    @property
    def mask_token(self):
        return "<mask>"

    @property
    def max_context(self):
        return None  # unbounded; the mock never truncates

    def info(self):
        return BackendInfo(mask_token="<mask>", max_context=1 << 20,
                           model_id=f"mock-{self.seed}")

    def fill_mask(self, masked):
        self.calls += 1
        probs = []
        toks = []
        for index in range(masked.mask_count):
            digest = hashlib.sha256(
                f"{self.seed}|{masked.mask_count}|{index}|".encode("utf-8")
                + masked.text.encode("utf-8")
            ).digest()
            unit = int.from_bytes(digest[:8], "big") / float(1 << 64)
            probs.append(0.01 + 0.98 * unit)
            toks.append("tok%03d" % (int.from_bytes(digest[8:10], "big") % 1000))
        return _check_result(
            FillMaskResult(tuple(probs), tuple(toks),
                           model_id=f"mock-{self.seed}"),
            masked.mask_count,
        )


class RemoteBackend:
    """HTTP client for a fill-mask model server."""

    def __init__(self, base_url, timeout=60.0, retries=3, retry_wait=1.0,
                 session=None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.retries = retries
        self.retry_wait = retry_wait
        self._session = session or requests.Session()
        self._info = None

    def _request(self, method, path, **kwargs):
        url = self.base_url + path
        last_exc = None
        for attempt in range(self.retries + 1):
            try:
                return self._session.request(
                    method, url, timeout=self.timeout, **kwargs)
            except (requests.ConnectionError, requests.Timeout) as exc:
                last_exc = exc
                if attempt < self.retries:
                    time.sleep(self.retry_wait)
        raise BackendError(
            f"backend unreachable after {self.retries + 1} attempts: "
            f"{last_exc}", unreachable=True)

    def info(self):
        if self._info is None:
            resp = self._request("GET", "/v1/info")
            if resp.status_code != 200:
                raise BackendError(
                    f"/v1/info returned {resp.status_code}",
                    unreachable=resp.status_code == 503)
            payload = resp.json()
            try:
                self._info = BackendInfo(
                    mask_token=payload["mask_token"],
                    max_context=int(payload["max_context"]),
                    model_id=payload["model_id"],
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise BackendError(f"malformed /v1/info payload: {exc}")
        return self._info

    @property
    def mask_token(self):
        return self.info().mask_token

    @property
    def max_context(self):
        return self.info().max_context

    def fill_mask(self, masked, gold_tokens=None):
        body = {"code": masked.text, "mask_count": masked.mask_count}
        if gold_tokens is not None:
            body["gold_tokens"] = list(gold_tokens)
        resp = self._request("POST", "/v1/fill_mask", json=body)
        if resp.status_code == 413:
            raise BackendError("input exceeds the model context window")
        if resp.status_code != 200:
            raise BackendError(
                f"/v1/fill_mask returned {resp.status_code}",
                unreachable=resp.status_code == 503)
        try:
            payload = resp.json()
            result = FillMaskResult(
                probabilities=tuple(float(p)
                                    for p in payload["probabilities"]),
                tokens=tuple(str(t) for t in payload["tokens"]),
                model_id=payload.get("model_id", "unknown"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise BackendError(f"malformed /v1/fill_mask payload: {exc}")
        return _check_result(result, masked.mask_count)


__all__ = [
    "BackendError",
    "BackendInfo",
    "FillMaskResult",
    "MockBackend",
    "RemoteBackend",
]
