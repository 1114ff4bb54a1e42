"""Shared expected-value tables for the test suite."""

# Closed-form P3/P4 evaluations at every point the distance distribution of
# a saturated strength-2 array (or one with 1-3 columns deleted) can hit:
# lengths n-1 .. n-4, distances 0, (n-6)/2 .. n/2. Entries are
# (degree, point, length-offset, value), all functions of n; each one was
# confirmed by direct evaluation at n = 12, 16, 20, 24 before being frozen.
PROOF_KRAWTCHOUK_FORMS = [
    (3, lambda n: 0, 1, lambda n: (n - 3) * (n - 2) * (n - 1) // 6),
    (3, lambda n: n // 2, 1, lambda n: (n - 2) // 2),
    (4, lambda n: 0, 1, lambda n: (n - 4) * (n - 3) * (n - 2) * (n - 1) // 24),
    (4, lambda n: n // 2, 1, lambda n: (n - 4) * (n - 2) // 8),
    (3, lambda n: 0, 2, lambda n: (n - 4) * (n - 3) * (n - 2) // 6),
    (3, lambda n: (n - 2) // 2, 2, lambda n: 0),
    (3, lambda n: n // 2, 2, lambda n: n - 4),
    (4, lambda n: 0, 2, lambda n: (n - 5) * (n - 4) * (n - 3) * (n - 2) // 24),
    (4, lambda n: (n - 2) // 2, 2, lambda n: (n - 4) * (n - 2) // 8),
    (4, lambda n: n // 2, 2, lambda n: (n - 10) * (n - 4) // 8),
    (3, lambda n: 0, 3, lambda n: (n - 5) * (n - 4) * (n - 3) // 6),
    (3, lambda n: (n - 4) // 2, 3, lambda n: (4 - n) // 2),
    (3, lambda n: (n - 2) // 2, 3, lambda n: (n - 4) // 2),
    (3, lambda n: n // 2, 3, lambda n: (3 * n - 20) // 2),
    (4, lambda n: 0, 3, lambda n: (n - 6) * (n - 5) * (n - 4) * (n - 3) // 24),
    (4, lambda n: (n - 4) // 2, 3, lambda n: (n - 6) * (n - 4) // 8),
    (4, lambda n: (n - 2) // 2, 3, lambda n: (n - 6) * (n - 4) // 8),
    (4, lambda n: n // 2, 3, lambda n: (n - 20) * (n - 6) // 8),
    (3, lambda n: 0, 4, lambda n: (n - 6) * (n - 5) * (n - 4) // 6),
    (3, lambda n: (n - 6) // 2, 4, lambda n: 6 - n),
    (3, lambda n: (n - 4) // 2, 4, lambda n: 0),
    (3, lambda n: (n - 2) // 2, 4, lambda n: n - 6),
    (3, lambda n: n // 2, 4, lambda n: 2 * (n - 10)),
    (4, lambda n: 0, 4, lambda n: (n - 7) * (n - 6) * (n - 5) * (n - 4) // 24),
    (4, lambda n: (n - 6) // 2, 4, lambda n: (n - 6) * (n - 12) // 8),
    (4, lambda n: (n - 4) // 2, 4, lambda n: (n - 6) * (n - 4) // 8),
    (4, lambda n: (n - 2) // 2, 4, lambda n: (n - 6) * (n - 12) // 8),
    (4, lambda n: n // 2, 4, lambda n: (n * n - 42 * n + 280) // 8),
]
