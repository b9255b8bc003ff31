"""Compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 20,40,80,160] [--lattice godel] [--repeat 5]

Prints one CSV row per (kernel, n) with the best time of each backend in
milliseconds and the speedup. Results of the two backends are also checked
to be bit-identical.
"""
import argparse
import csv
import sys
import timeit

import numpy as np

from latred import kernels, reduction
from latred.generate import grid_values, random_automaton
from latred.lattice import LatticeSpec


def cases(n, lattice, rng):
    code = lattice.kind.code
    M, N = grid_values(rng, (n, n), lattice), grid_values(rng, (n, n), lattice)
    D = grid_values(rng, (2, n, n), lattice)
    Q = kernels.right_residual(M, M, code)
    A = random_automaton(n, 2, lattice, rng)
    return {
        "mat_mul": lambda: kernels.mat_mul(M, N, code),
        "right_residual": lambda: kernels.right_residual(M, N, code),
        "left_residual": lambda: kernels.left_residual(N, M, code),
        "ri_step": lambda: kernels.ri_step(Q, D, code),
        "li_step": lambda: kernels.li_step(Q, D, code),
        "transitivity": lambda: kernels.transitivity_violation(Q, code, lattice.epsilon),
        "ri_matrix_k3": lambda: reduction.method_matrix(A, "ri", 3).data,
    }


def best_ms(fn, repeat):
    number = 3
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number * 1000.0


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="20,40,80,160")
    parser.add_argument("--lattice", default="godel")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if "compiled" not in kernels.BACKENDS:
        sys.exit("the compiled extension is not built; run: python3 setup.py build_ext --inplace")
    lattice = LatticeSpec.of(args.lattice)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["kernel", "n", "compiled_ms", "python_ms", "speedup"])
    previous = kernels.BACKEND
    try:
        for n in (int(s) for s in args.sizes.split(",")):
            for name in cases(n, lattice, np.random.default_rng(n)):
                times, results = {}, {}
                for backend in ("compiled", "python"):
                    kernels.use_backend(backend)
                    # rebuild inputs under the same seed so both backends see equal data
                    fn = cases(n, lattice, np.random.default_rng(n))[name]
                    results[backend] = fn()
                    times[backend] = best_ms(fn, args.repeat)
                same = results["compiled"] is None and results["python"] is None
                same = same or np.array_equal(np.asarray(results["compiled"]), np.asarray(results["python"]))
                if not same:
                    sys.exit(f"backends disagree on {name} at n={n}")
                writer.writerow([name, n, f"{times['compiled']:.3f}", f"{times['python']:.3f}",
                                 f"{times['python'] / times['compiled']:.1f}"])
    finally:
        kernels.use_backend(previous)


if __name__ == "__main__":
    main()
