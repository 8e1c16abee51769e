"""Server configuration."""

from dataclasses import dataclass


@dataclass(frozen=True)
class ServerConfig:
    """Everything needed to load a checkpoint and bind the server.

    ``max_context`` of 0 means "read the window from the checkpoint";
    an explicit value may shrink the advertised window but never exceed
    what the model can actually attend over.
    """

    model: str                 # model id or local checkpoint directory
    host: str = "127.0.0.1"
    port: int = 8756
    max_context: int = 0       # usable sequence length, in model tokens
    device: str = "cpu"        # torch device hint, e.g. "cpu" or "cuda:0"


__all__ = ["ServerConfig"]
