"""Scene vectors, answer one-hots and word-id sequences."""

import numpy as np
import pytest

from src.core.errors import DataError, TokenizationError
from src.scene import ANSWERS, canonicalize, make_object, scene_equal, validate_scene
from src.tensorize import (
    MAX_TOKENS,
    PAD,
    SCENE_DIM,
    Vocabulary,
    answer_index,
    decode_answer,
    decode_scene,
    detokenize,
    encode_answer,
    encode_scene,
    tokenize,
    tokenize_batch,
)
from src.tensorize.scene_codec import SLOT_DIM
from src.worldgen import gen_scene


class TestSceneCodec:
    def test_layout(self, table_scene):
        v = encode_scene(table_scene).reshape(10, SLOT_DIM)
        assert encode_scene(table_scene).shape == (SCENE_DIM,)
        assert v[:4, 0].tolist() == [1.0] * 4
        assert not v[4:].any()
        # slot 1 is the big red metal cube
        assert v[1, 1:4].tolist() == [1.0, 0.0, 0.0]
        assert v[1, 4:6].tolist() == [0.0, 1.0]
        assert v[1, 6:8].tolist() == [1.0, 0.0]
        assert v[1, 8] == 1.0
        # the sphere sits one level up: z / 3
        assert v[2, 18] == pytest.approx(1.0 / 3.0)

    def test_roundtrip(self, table_scene):
        assert decode_scene(encode_scene(table_scene)) == table_scene

    @pytest.mark.parametrize("seed", range(8))
    def test_roundtrip_generated(self, seed):
        s = gen_scene(np.random.default_rng(seed))
        assert decode_scene(encode_scene(s)) == s

    @pytest.mark.parametrize(
        "objects",
        [
            [make_object("cube", "small", "rubber", "red", (0.123, 1.0, 0.0))],
            [
                make_object("cube", "big", "metal", "red", (0.0, 0.0, 0.0)),
                make_object("sphere", "small", "rubber", "blue", (0.2, 0.0, 1.0)),
            ],
            [
                make_object("cylinder", "big", "metal", "gray", (-2.987, 2.5, 0.0)),
                make_object("cube", "small", "metal", "cyan", (-2.75, 2.31, 1.0)),
                make_object(
                    "sphere", "big", "rubber", "purple", (1.0 / 3.0, -0.7071, 0.0)
                ),
            ],
        ],
    )
    def test_roundtrip_off_lattice(self, objects):
        s = canonicalize(objects)
        assert validate_scene(s).ok
        assert scene_equal(s, decode_scene(encode_scene(s)), 1e-6)

    def test_repair_keeps_offset_stack(self):
        s = canonicalize(
            [
                make_object("cube", "big", "metal", "red", (0.0, 0.0, 0.0)),
                make_object("sphere", "small", "rubber", "blue", (0.2, 0.0, 1.0)),
                make_object("cylinder", "small", "metal", "gray", (2.0, 2.0, 0.0)),
                make_object("cylinder", "small", "metal", "green", (2.1, 2.0, 0.0)),
            ]
        )
        # the two cylinders collide, so decoding has to repair
        assert not validate_scene(s).ok
        decoded = decode_scene(encode_scene(s))
        assert validate_scene(decoded).ok
        sphere = next(o for o in decoded if o.shape.value == "sphere")
        assert sphere.pos == pytest.approx((0.2, 0.0, 1.0))

    def test_presence_threshold(self, table_scene):
        v = encode_scene(table_scene).reshape(10, SLOT_DIM)
        v[3, 0] = 0.4
        assert len(decode_scene(v.reshape(-1))) == 3

    @pytest.mark.parametrize("seed", range(6))
    def test_decode_is_total(self, seed):
        rng = np.random.default_rng(seed)
        v = rng.normal(size=SCENE_DIM) * 3.0
        v[::SLOT_DIM] = 1.0
        s = decode_scene(v)
        assert validate_scene(s).ok

    def test_decode_non_finite(self):
        v = np.full(SCENE_DIM, np.nan)
        v[0] = 1.0
        assert validate_scene(decode_scene(v)).ok

    def test_argmax_ties_take_first(self):
        v = np.zeros((10, SLOT_DIM))
        v[0, 0] = 1.0
        v[0, 1:16] = 0.5
        obj = decode_scene(v.reshape(-1))[0]
        attrs = (obj.shape.value, obj.size.value, obj.material.value, obj.color.value)
        assert attrs == ("cube", "small", "metal", "red")


class TestAnswers:
    def test_vocabulary_size(self):
        assert len(ANSWERS) == 27

    def test_onehot(self):
        v = encode_answer("yes")
        assert v.sum() == 1.0
        assert decode_answer(v) == "yes"
        assert answer_index("0") == 0

    def test_unknown(self):
        with pytest.raises(DataError, match="unknown-answer"):
            answer_index("maybe")


class TestText:
    vocab = Vocabulary.build(["remove", "the", "red", "cube", "then", "it"])

    def test_pad_first_and_sorted(self):
        assert self.vocab.words[0] == PAD
        assert list(self.vocab.words[1:]) == sorted(self.vocab.words[1:])

    def test_tokenize_pads(self):
        ids = tokenize("Remove the red cube", self.vocab)
        assert ids.shape == (MAX_TOKENS,)
        assert (ids[4:] == 0).all()
        assert detokenize(ids, self.vocab) == "remove the red cube"

    def test_oov(self):
        with pytest.raises(TokenizationError, match="oov-token"):
            tokenize("remove the blue cube", self.vocab)

    def test_too_long(self):
        with pytest.raises(TokenizationError, match="sequence-too-long"):
            tokenize(" ".join(["the"] * (MAX_TOKENS + 1)), self.vocab)

    def test_batch(self):
        ids = tokenize_batch(["remove it", "the cube"], self.vocab)
        assert ids.shape == (2, MAX_TOKENS)

    def test_save_load(self, tmp_path):
        self.vocab.save(tmp_path / "vocab.json")
        loaded = Vocabulary.load(tmp_path / "vocab.json")
        assert loaded == self.vocab
        assert loaded.digest() == self.vocab.digest()

    def test_rejects_bad_vocab(self):
        with pytest.raises(DataError, match="bad-vocab"):
            Vocabulary(("the", PAD))
