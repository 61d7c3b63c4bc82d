"""
Micro-benchmark for the schoolbook/Karatsuba crossover.
Run from the repository root: prints ms per product for each threshold so
QCONG_KARATSUBA_THRESHOLD can be set in .env.
"""
import random
import sys
import time
from pathlib import Path

from dotenv import load_dotenv

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from polyarith import Poly, mul_karatsuba, mul_schoolbook  # noqa: E402

load_dotenv()

THRESHOLDS = (8, 16, 32, 64, 128)
DEGREES = (64, 256, 1024)
REPEATS = 5


def random_poly(rng: random.Random, degree: int) -> Poly:
    return Poly(rng.randint(-50, 50) for _ in range(degree + 1))


def time_product(fn, p: Poly, q: Poly) -> float:
    start = time.perf_counter()
    for _ in range(REPEATS):
        fn(p, q)
    return (time.perf_counter() - start) * 1000 / REPEATS


def run_benchmark():
    rng = random.Random(30861)
    for degree in DEGREES:
        p, q = random_poly(rng, degree), random_poly(rng, degree)
        base = time_product(mul_schoolbook, p, q)
        cells = [f"schoolbook {base:8.2f}"]
        for t in THRESHOLDS:
            ms = time_product(lambda x, y: mul_karatsuba(x, y, threshold=t), p, q)
            cells.append(f"t={t} {ms:8.2f}")
        print(f"degree {degree:5d}: " + "  ".join(cells))


if __name__ == "__main__":
    run_benchmark()
