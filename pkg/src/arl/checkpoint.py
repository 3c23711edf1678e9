"""Model checkpoints: an ARLW1 weight file plus a JSON sidecar.

``stage1.arlw``/``stage1.json`` hold the encoder and decoder;
``stage2.arlw``/``stage2.json`` hold the text encoder and record the digest
of the decoder it was trained through, so a bundle can refuse a decoder that
changed since.
"""

from pathlib import Path

from ..core.artifacts import read_json, write_json
from ..core.errors import ModelMismatchError
from ..core.logging import get_logger
from ..micrograd import Params
from ..tensorize import Vocabulary
from .models import Stage1Model, Stage2Model

log = get_logger("arl.checkpoint")


def _paths(model_dir: Path, stage: str) -> tuple[Path, Path]:
    model_dir = Path(model_dir)
    return model_dir / f"{stage}.arlw", model_dir / f"{stage}.json"


def save_stage1(
    m1: Stage1Model, model_dir: Path, fingerprint: str, history: dict | None = None
) -> None:
    weights, sidecar = _paths(model_dir, "stage1")
    m1.params.save(weights)
    write_json(
        sidecar,
        {
            "stage": "stage1",
            "action_dim": m1.action_dim,
            "hidden_dim": m1.hidden_dim,
            "config": fingerprint,
            "decoder_digest": m1.decoder.digest(),
            "history": history,
        },
    )
    log.info(f"Saved stage-1 model to {weights}")


def load_stage1(model_dir: Path) -> Stage1Model:
    weights, sidecar = _paths(model_dir, "stage1")
    meta = read_json(sidecar)
    params = Params.load(weights)
    m1 = Stage1Model(params, meta["action_dim"], meta["hidden_dim"])
    if m1.decoder.digest() != meta["decoder_digest"]:
        raise ModelMismatchError(
            "decoder-changed", f"{weights} does not match the digest in {sidecar}"
        )
    return m1


def save_stage2(
    m2: Stage2Model,
    m1: Stage1Model,
    vocab: Vocabulary,
    model_dir: Path,
    fingerprint: str,
    history: dict | None = None,
    stage: str = "stage2",
) -> None:
    weights, sidecar = _paths(model_dir, stage)
    m2.params.save(weights)
    write_json(
        sidecar,
        {
            "stage": stage,
            "action_dim": m2.action_dim,
            "embed_dim": m2.embed_dim,
            "lstm_hidden": m2.lstm_hidden,
            "vocab_size": m2.vocab_size,
            "vocab_hash": vocab.digest(),
            "config": fingerprint,
            "decoder_digest": m1.decoder.digest(),
            "history": history,
        },
    )
    log.info(f"Saved {stage} model to {weights}")


def load_stage2(
    model_dir: Path, m1: Stage1Model, vocab: Vocabulary, stage: str = "stage2"
) -> Stage2Model:
    weights, sidecar = _paths(model_dir, stage)
    meta = read_json(sidecar)
    if meta["action_dim"] != m1.action_dim:
        raise ModelMismatchError(
            "action-dim",
            f"text encoder emits L={meta['action_dim']} "
            f"but the decoder expects L={m1.action_dim}",
        )
    if meta["vocab_hash"] != vocab.digest():
        raise ModelMismatchError(
            "vocab-hash", f"{sidecar} was trained with a different vocabulary"
        )
    if meta["decoder_digest"] != m1.decoder.digest():
        raise ModelMismatchError(
            "decoder-changed", f"{sidecar} was trained through a different decoder"
        )
    return Stage2Model(
        Params.load(weights),
        meta["vocab_size"],
        meta["embed_dim"],
        meta["lstm_hidden"],
        meta["action_dim"],
    )
