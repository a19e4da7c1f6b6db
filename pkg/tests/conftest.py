import pytest

from symf.gallery import cumulative_matrix, multiparameter_matrix, pascal_matrix, toeplitz_matrix

MP_PARAMS = ["1/2", -2, 3, "5/3", 1, 2, -1, 4, 2, 3, "-1/3", 5]


def gallery_matrices():
    return {
        "toeplitz": toeplitz_matrix({0: 1, 1: "1/2"}),
        "cumulative": cumulative_matrix(),
        "multiparameter": multiparameter_matrix(MP_PARAMS),
        "pascal": pascal_matrix(),
    }


# matrices of the block shape (f_0 = 1, f_k(0) = 0); Toeplitz is not of this shape
SHAPE_E = ("cumulative", "multiparameter", "pascal")


@pytest.fixture(scope="session")
def gallery():
    return gallery_matrices()


def random_matrix(seed, rows=range(-3, 4), width=2, bound=5):
    """Identity outside ``rows``; each listed row gets random entries near the diagonal."""
    import random

    from gmpy2 import mpq

    from symf.transform import explicit_matrix

    rng = random.Random(seed)
    table = {}
    for i in rows:
        r = {}
        for j in range(i - width, i + width + 1):
            v = mpq(rng.randint(-bound, bound), rng.randint(1, bound))
            if v:
                r[j] = v
        if not r:
            r[i] = mpq(1)
        table[i] = r
    return explicit_matrix(table, default="identity", name=f"random[{seed}]")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
