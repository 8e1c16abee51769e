"""Command-line entry point: load a checkpoint and serve it."""

import argparse

import uvicorn

from .app import create_app
from .config import ServerConfig


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cohwatch-model-server",
        description="Serve fill-mask token probabilities over HTTP.")
    parser.add_argument("--model", required=True,
                        help="model id or local checkpoint directory")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8756)
    parser.add_argument("--max-context", type=int, default=0,
                        help="advertised context window in tokens "
                             "(default: read it from the checkpoint)")
    parser.add_argument("--device", default="cpu",
                        help="torch device, e.g. cpu or cuda:0")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = ServerConfig(model=args.model, host=args.host, port=args.port,
                          max_context=args.max_context, device=args.device)
    app = create_app(config=config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
