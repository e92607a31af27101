"""Timing comparison of the pure-Python and compiled kernels.

Run as `python benchmarks/bench_kernels.py`.  Each workload is executed
with both backends on identical inputs; the compiled column is blank when
the extension is not built.
"""

import time

from chromarank import _kernels_py
from chromarank.constructors import general_linear, symmetric, wreath_cyclic

try:
    from chromarank import _kernels_c
except ImportError:
    _kernels_c = None


def _timed(fn, *args, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def workloads():
    s7 = symmetric(7)
    wreath = wreath_cyclic(general_linear(2, 3), 2)
    s7_elems = _kernels_py.close_group(list(s7._raw), 10**6)
    some = s7_elems[: len(s7_elems) // 2]
    yield "close_group S_7 (5040 elts)", "close_group", (list(s7._raw), 10**6)
    yield "close_group GL(2,3) wr C_2 (4608 elts)", "close_group", (list(wreath._raw), 10**6)
    yield "centralizer_filter over S_7", "centralizer_filter", (s7_elems, [s7_elems[1234]])
    yield "normalizer_filter over S_7 half", "normalizer_filter", (
        s7_elems,
        [some[17], some[423]],
        some,
    )
    yield "element_order sweep S_7", None, s7_elems
    yield "tuple_orbit in wreath", "tuple_orbit", (
        (wreath._raw[0], wreath._raw[0]),
        list(wreath._raw),
    )


def _order_sweep(backend, elems):
    return sum(backend.element_order(e) for e in elems)


def main():
    print(f"{'workload':42s} {'pure (s)':>10s} {'compiled (s)':>13s} {'speedup':>8s}")
    for label, fname, args in workloads():
        if fname is None:
            pure_t, pure_r = _timed(_order_sweep, _kernels_py, args)
        else:
            pure_t, pure_r = _timed(getattr(_kernels_py, fname), *args)
        if _kernels_c is None:
            print(f"{label:42s} {pure_t:10.4f} {'-':>13s} {'-':>8s}")
            continue
        if fname is None:
            comp_t, comp_r = _timed(_order_sweep, _kernels_c, args)
        else:
            comp_t, comp_r = _timed(getattr(_kernels_c, fname), *args)
        if pure_r != comp_r:
            raise AssertionError(f"backend mismatch on {label}")
        print(f"{label:42s} {pure_t:10.4f} {comp_t:13.4f} {pure_t / comp_t:7.1f}x")
    if _kernels_c is None:
        print("\ncompiled extension not built; only the pure backend was timed")


if __name__ == "__main__":
    main()
