"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Times each kernel on MNIST-CNN-sized tensors, then a full training step and
an input-gradient pass (what every attack iteration costs) per backend.
"""

import argparse
import time

import numpy as np

from ddn.attacks.core import loss_gradient
from ddn.models import build_mnist_cnn, clean_batch_loss
from ddn.tensor import kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=128)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    b = args.batch
    x = rng.random((b, 32, 26, 26)).astype(np.float32)
    cols = kernels.im2col(x, 0, 1)
    g = rng.standard_normal(cols.shape).astype(np.float32)
    pooled, arg = kernels.maxpool2x2_forward(x)
    model = build_mnist_cnn(seed=0)
    imgs = rng.random((b, 1, 28, 28)).astype(np.float32)
    labels = rng.integers(0, 10, b)

    def train_step():
        model.requires_grad_(True)
        clean_batch_loss(model, imgs, labels).backward()

    cases = {
        "im2col": lambda impl: lambda: kernels.im2col(x, 0, 1, impl=impl),
        "col2im": lambda impl: lambda: kernels.col2im(g, x.shape, 0, 1, impl=impl),
        "maxpool fwd": lambda impl: lambda: kernels.maxpool2x2_forward(x, impl=impl),
        "maxpool bwd": lambda impl: lambda: kernels.maxpool2x2_backward(pooled, arg, x.shape, impl=impl),
    }
    impls = kernels.available()
    names = sorted(impls)
    print(f"{'case':<16}" + "".join(f"{n:>12}" for n in names) + (f"{'speedup':>10}" if len(names) == 2 else ""))
    rows = {}
    for case, make in cases.items():
        rows[case] = [best_of(make(impls[n]), args.repeat) for n in names]
    for case, fn in (("train step", train_step), ("input grad", lambda: loss_gradient(model, imgs, labels))):
        row = []
        for n in names:
            prev = kernels.set_backend(n)
            row.append(best_of(fn, args.repeat))
            kernels.set_backend(prev)
        rows[case] = row
    for case, row in rows.items():
        line = f"{case:<16}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row)
        if len(row) == 2:
            line += f"{row[1 - names.index('cython')] / row[names.index('cython')]:>9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
