"""Action representation learner: stage-1 scene autoencoding, stage-2 text grounding."""

from .checkpoint import load_stage1, load_stage2, save_stage1, save_stage2
from .losses import scene_loss
from .models import Stage1Model, Stage2Model, init_stage1, init_stage2
from .predict import action_vectors, predict_scene, predict_scenes, reconstruct_scenes
from .train import (
    EarlyStopper,
    History,
    balanced_pairs,
    evaluate_scenes,
    scene_accuracy,
    train_stage1,
    train_stage2,
)

__all__ = [
    "EarlyStopper",
    "History",
    "Stage1Model",
    "Stage2Model",
    "action_vectors",
    "balanced_pairs",
    "evaluate_scenes",
    "init_stage1",
    "init_stage2",
    "load_stage1",
    "load_stage2",
    "predict_scene",
    "predict_scenes",
    "reconstruct_scenes",
    "save_stage1",
    "save_stage2",
    "scene_accuracy",
    "scene_loss",
    "train_stage1",
    "train_stage2",
]
