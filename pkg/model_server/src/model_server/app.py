"""HTTP surface for the fill-mask model.

Two endpoints, JSON in and out:

* ``GET /v1/info`` describes the loaded model: the literal mask
  placeholder to embed, the usable context window, and the checkpoint id.
* ``POST /v1/fill_mask`` scores every placeholder in the submitted code.

The checkpoint loads in a background thread so the server can bind its
port immediately and answer 503 until the weights are in.
"""

import logging
import threading
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException, Request
from pydantic import BaseModel

from .inference import (ContextOverflowError, FillMaskModel, GoldTokenError,
                        InferenceError, MaskCountError)

log = logging.getLogger("model_server")


class FillMaskRequest(BaseModel):
    code: str
    mask_count: int
    gold_tokens: list[str] | None = None


def _ready(app):
    model = app.state.model
    if model is None:
        raise HTTPException(status_code=503,
                            detail="model is not loaded yet")
    return model


def _load_into(app, config):
    try:
        app.state.model = FillMaskModel.load(config)
        log.info("model %s ready (window %d)", app.state.model.model_id,
                 app.state.model.max_context)
    except Exception:
        log.exception("model load failed; requests will keep getting 503")


def create_app(model=None, config=None):
    """Build the application.

    Pass a loaded ``model`` directly, or a ``config`` whose checkpoint is
    loaded in the background once the server starts.
    """

    @asynccontextmanager
    async def lifespan(app):
        if app.state.model is None and config is not None:
            threading.Thread(target=_load_into, args=(app, config),
                             daemon=True).start()
        yield

    app = FastAPI(title="fill-mask model server", lifespan=lifespan)
    app.state.model = model

    @app.get("/v1/info")
    def info(request: Request):
        served = _ready(request.app)
        return {"mask_token": served.mask_token,
                "max_context": served.max_context,
                "model_id": served.model_id}

    @app.post("/v1/fill_mask")
    def fill_mask(body: FillMaskRequest, request: Request):
        served = _ready(request.app)
        try:
            preds = served.fill(body.code, body.mask_count,
                                gold_tokens=body.gold_tokens)
        except (MaskCountError, GoldTokenError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except ContextOverflowError as exc:
            raise HTTPException(status_code=413, detail=str(exc))
        except InferenceError as exc:
            raise HTTPException(status_code=500, detail=str(exc))
        return {"probabilities": [p.probability for p in preds],
                "tokens": [p.token for p in preds],
                "model_id": served.model_id}

    return app


__all__ = ["FillMaskRequest", "create_app"]
