"""Compare the compiled kernels against the numpy fallback.

Times the two hot kernels in isolation (GELU forward+derivative, vision
splatting) and one end-to-end training step of the default policy net with
each backend swapped in. Prints a table and optionally writes JSON.

    python3 benchmarks/bench_kernels.py [--repeat 20] [--json out.json]
"""

import argparse
import json
import time

import numpy as np

from fdpolicy import kernels
from fdpolicy.kernels import _pykernels

try:
    from fdpolicy.kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    fn()  # warm up
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def gelu_case(impl, n):
    u = np.random.default_rng(0).normal(size=n)
    return lambda: impl.gelu_fused(u)


def splat_case(impl, batch, k, grid):
    rng = np.random.default_rng(1)
    pos = np.ascontiguousarray(rng.uniform(-0.5, 0.5, size=(batch, k, 2)))
    inten = np.ascontiguousarray(rng.uniform(0.2, 1.0, size=(batch, k)))
    return lambda: impl.splat(pos, inten, grid, 0.5)


def train_step_case(impl, batch):
    from fdpolicy.datastore import PROPRIO, vision_spec
    from fdpolicy.nets import ObservationBundle, PolicyNet, policy_config

    specs = (PROPRIO, vision_spec(16))
    net = PolicyNet(policy_config(24, specs, 2, ("proprio", "vision")), seed=0)
    rng = np.random.default_rng(2)
    y = ObservationBundle(specs, (rng.normal(size=(batch, 6)), rng.normal(size=(batch, 512))),
                          priority_k=1, horizon=2)
    x = rng.normal(size=(batch, 24))
    t = rng.integers(1, 101, size=batch)
    g = rng.normal(size=(batch, 24))
    grads = net.params.zeros_like()

    def step():
        saved = kernels._impl
        kernels._impl = impl
        try:
            out, cache = net.forward_train(x, t, y)
            net.backward(g, cache, grads)
        finally:
            kernels._impl = saved
    return step


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--json", default=None)
    args = ap.parse_args(argv)

    impls = {"numpy": _pykernels}
    if _ckernels is not None:
        impls["cython"] = _ckernels
    cases = {
        "gelu 64x128": lambda im: gelu_case(im, 64 * 128),
        "gelu 1024x128": lambda im: gelu_case(im, 1024 * 128),
        "splat 100x8 on 16x16": lambda im: splat_case(im, 100, 8, 16),
        "splat 100x8 on 64x64": lambda im: splat_case(im, 100, 8, 64),
        "train step batch 64": lambda im: train_step_case(im, 64),
    }
    results = []
    print(f"{'case':<24}" + "".join(f"{name:>12}" for name in impls) + f"{'speedup':>10}")
    for label, make in cases.items():
        row = {"case": label}
        for name, impl in impls.items():
            row[name] = best_of(make(impl), args.repeat)
        sp = row["numpy"] / row["cython"] if "cython" in row else float("nan")
        row["speedup"] = sp
        results.append(row)
        print(f"{label:<24}" + "".join(f"{row[n] * 1e3:>10.3f}ms" for n in impls) + f"{sp:>9.2f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=1)


if __name__ == "__main__":
    main()
