"""Shared fixtures: a tiny self-built checkpoint the suite can run on.

The suite must run offline, so instead of downloading a real code model
it trains a miniature byte-level BPE tokenizer on a few C++ snippets and
pairs it with a randomly initialised masked-LM.  Random weights still
produce a proper softmax distribution at every mask position, which is
all the wire contract needs; linguistic quality is exercised separately
in test_replication.py when a real checkpoint is available.
"""

import pytest
import torch
import transformers
from tokenizers import Tokenizer, decoders, models, pre_tokenizers, trainers
from transformers import (PreTrainedTokenizerFast, RobertaConfig,
                          RobertaForMaskedLM)

from model_server.config import ServerConfig
from model_server.inference import FillMaskModel

transformers.logging.set_verbosity_error()
transformers.logging.disable_progress_bar()

# Usable context window of the tiny checkpoint, in tokens.
WINDOW = 256

_TRAIN_SNIPPETS = [
    "int accumulate_totals(const std::vector<int>& values) {\n"
    "    int total = 0;\n"
    "    for (int v : values) total += v;\n"
    "    return total;\n"
    "}\n",
    "void reset_buffer(char* buf, size_t n) {\n"
    "    std::memset(buf, 0, n);\n"
    "}\n",
    "double running_mean(const double* xs, int n) {\n"
    "    double sum = 0.0;\n"
    "    for (int i = 0; i < n; ++i) sum += xs[i];\n"
    "    return sum / n;\n"
    "}\n",
    "bool contains_key(const std::map<std::string, int>& table,\n"
    "                  const std::string& key) {\n"
    "    return table.find(key) != table.end();\n"
    "}\n",
]


def _build_checkpoint(path):
    specials = ["<s>", "<pad>", "</s>", "<unk>", "<mask>"]
    tok = Tokenizer(models.BPE(unk_token="<unk>"))
    tok.pre_tokenizer = pre_tokenizers.ByteLevel(add_prefix_space=False)
    tok.decoder = decoders.ByteLevel()
    trainer = trainers.BpeTrainer(
        vocab_size=512, special_tokens=specials,
        initial_alphabet=pre_tokenizers.ByteLevel.alphabet())
    tok.train_from_iterator(_TRAIN_SNIPPETS, trainer)
    fast = PreTrainedTokenizerFast(
        tokenizer_object=tok, model_max_length=WINDOW,
        bos_token="<s>", eos_token="</s>", unk_token="<unk>",
        pad_token="<pad>", cls_token="<s>", sep_token="</s>",
        mask_token="<mask>")
    fast.save_pretrained(path)
    config = RobertaConfig(
        vocab_size=len(fast), hidden_size=32, num_hidden_layers=2,
        num_attention_heads=2, intermediate_size=64,
        max_position_embeddings=WINDOW + 2,
        pad_token_id=fast.pad_token_id, bos_token_id=fast.bos_token_id,
        eos_token_id=fast.eos_token_id)
    torch.manual_seed(1234)
    RobertaForMaskedLM(config).save_pretrained(path)


@pytest.fixture(scope="session")
def window():
    return WINDOW


@pytest.fixture(scope="session")
def checkpoint_dir(tmp_path_factory):
    path = tmp_path_factory.mktemp("tiny-mlm")
    _build_checkpoint(path)
    return path


@pytest.fixture(scope="session")
def served_model(checkpoint_dir):
    return FillMaskModel.load(ServerConfig(model=str(checkpoint_dir)))
