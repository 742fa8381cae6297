"""Regenerate the synthetic weight fixtures.

The family alpha_k = 1/k (independent of N) is decreasing along the chain.
It stands in for externally computed coefficients and exercises the
per-N file ingestion of the gap sweep.
"""

from pathlib import Path

from fermigraph.weights import WeightSet, save_weights

HERE = Path(__file__).parent


def family(n: int) -> WeightSet:
    return WeightSet(tuple(1.0 / k for k in range(1, n)), provenance="file", potential="synthetic-decay",
                     source="synthetic fixture: alpha_k = 1/k")


if __name__ == "__main__":
    for n in range(2, 11):
        save_weights(family(n), HERE / "weights" / f"decay_n{n}.json")
    save_weights(family(5), HERE / "weights_csv" / "decay_n5.csv")
