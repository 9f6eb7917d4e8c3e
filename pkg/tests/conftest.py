import numpy as np
import pytest

from curricula.corpus import Corpus, SamplePair


def synthetic_corpus(n: int, seed: int, vocab: int = 30, max_len: int = 14) -> Corpus:
    """Random pseudo-word corpus with a zipf-ish unigram distribution."""
    rng = np.random.default_rng(seed)
    weights = 1.0 / np.arange(1, vocab + 1)
    weights /= weights.sum()
    pairs = []
    for i in range(n):
        n_src = int(rng.integers(1, max_len + 1))
        n_tgt = int(rng.integers(1, max_len + 1))
        src = tuple(f"s{w}" for w in rng.choice(vocab, size=n_src, p=weights))
        tgt = tuple(f"t{w}" for w in rng.choice(vocab, size=n_tgt, p=weights))
        pairs.append(SamplePair(id=i, src_tokens=src, tgt_tokens=tgt))
    return Corpus(pairs)


def write_bitext(tmp_path, corpus: Corpus, prefix: str = "corpus"):
    src = tmp_path / f"{prefix}.src"
    tgt = tmp_path / f"{prefix}.tgt"
    src.write_text("\n".join(" ".join(p.src_tokens) for p in corpus) + "\n", encoding="utf-8")
    tgt.write_text("\n".join(" ".join(p.tgt_tokens) for p in corpus) + "\n", encoding="utf-8")
    return src, tgt


@pytest.fixture(scope="session")
def toy_corpus() -> Corpus:
    return synthetic_corpus(1000, seed=99)
