"""Git history mining: function identities, version stores, traversal."""

from .identity import FunctionIdentity, identity_key
from .store import (
    FunctionHistory,
    FunctionHistoryStore,
    FunctionVersion,
    StoreFormatError,
    load_store,
    save_store,
)
from .miner import MiningConfig, MiningError, SkipEntry, mine_repository

__all__ = [
    "FunctionHistory",
    "FunctionHistoryStore",
    "FunctionIdentity",
    "FunctionVersion",
    "MiningConfig",
    "MiningError",
    "SkipEntry",
    "StoreFormatError",
    "identity_key",
    "load_store",
    "mine_repository",
    "save_store",
]
