"""
Cache size against transmit power
=================================

Growing the per-user cache lets the optimizer shift mass between the private
and the shared sublibrary, and the peak transmit power falls monotonically
until the whole library fits in the cache.
"""

from corrcache import LibraryConfig, default_inv_gain_sq, optimize_allocation

gains = default_inv_gain_sq(5)

print(f"{'M':>5}  {'peak power':>12}  {'cache split (private, ..., shared)'}")
for M in (0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0):
    config = LibraryConfig.from_alpha(
        5, 5, 1.0, M, (0.5, 0, 0, 0, 0.5), gains
    )
    alloc, report = optimize_allocation(config)
    print(
        f"{M:5.2f}  {report.total:12.4f}  "
        f"{tuple(round(p, 3) for p in alloc.pi)}"
    )

print("\nat M = 5 the full library is cached and no power is needed")
