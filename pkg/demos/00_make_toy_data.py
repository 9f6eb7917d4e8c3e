"""Generate the bundled toy bitext under data/.

Synthetic pseudo-word sentence pairs with a zipf-ish vocabulary so that
length and word-frequency-rank criteria produce interesting spreads, plus a
matching one-best probability file. Deterministic: rerunning reproduces the
same files byte for byte.
"""

from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "data"
N = 300
VOCAB = 60
SEED = 20240801


def zipf_weights(n: int) -> np.ndarray:
    w = 1.0 / np.arange(1, n + 1)
    return w / w.sum()


def main() -> None:
    rng = np.random.default_rng(SEED)
    weights = zipf_weights(VOCAB)
    src_lines, tgt_lines, probs = [], [], []
    for _ in range(N):
        n_src = int(rng.integers(1, 25))
        n_tgt = max(1, n_src + int(rng.integers(-3, 4)))
        src = [f"s{w}" for w in rng.choice(VOCAB, size=n_src, p=weights)]
        tgt = [f"t{w}" for w in rng.choice(VOCAB, size=n_tgt, p=weights)]
        src_lines.append(" ".join(src))
        tgt_lines.append(" ".join(tgt))
        # longer sentences tend to get lower one-best probability
        probs.append(float(np.clip(rng.beta(2.0, 1.0 + 0.15 * n_src), 1e-9, 1.0)))
    OUT.mkdir(exist_ok=True)
    (OUT / "toy.src").write_text("\n".join(src_lines) + "\n", encoding="utf-8")
    (OUT / "toy.tgt").write_text("\n".join(tgt_lines) + "\n", encoding="utf-8")
    (OUT / "toy.onebest").write_text("\n".join(repr(p) for p in probs) + "\n", encoding="utf-8")
    print(f"wrote {N} pairs to {OUT}")


if __name__ == "__main__":
    main()
