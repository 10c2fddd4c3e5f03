import random

from hypothesis import given, settings, strategies as st

from chromalg.intlinalg import (
    IntMatrix,
    cokernel_invariants,
    in_column_span,
    kernel_basis_field,
    kernel_basis_int,
    kernel_into_lattice,
    smith_normal_form,
    solve_int,
)
from chromalg.scalars import FP, QQ


def test_snf_single_prime():
    snf = smith_normal_form(IntMatrix.make([[5]]))
    assert snf.divisors == (5,)
    assert snf.U.entries == ((1,),) and snf.V.entries == ((1,),)
    assert snf.verify()


def test_snf_hand_reduced_2x2():
    # hand row/column reduction gives diag(2, 4); |det| = 8 = 2 * 4
    M = IntMatrix.make([[2, 4], [6, 8]])
    snf = smith_normal_form(M)
    assert snf.divisors == (2, 4)
    assert M.det_sign_free_abs() == 8
    assert snf.verify()


def test_snf_zero_matrix():
    snf = smith_normal_form(IntMatrix.zero(2, 3))
    assert snf.divisors == ()
    assert snf.verify()


def test_cokernel_examples():
    assert cokernel_invariants(IntMatrix.make([[3]]), 1) == [3]
    assert cokernel_invariants(None, 2) == [0, 0]
    # diag(2,4) sitting inside ambient rank 3: Smith form plus a free complement
    M = IntMatrix.make([[2, 0], [0, 4], [0, 0]])
    assert cokernel_invariants(M, 3) == [2, 4, 0]


def test_cokernel_drops_unit_divisors():
    M = IntMatrix.make([[1, 0], [0, 6]])
    assert cokernel_invariants(M, 2) == [6]


def test_kernel_identity_empty():
    assert kernel_basis_int(IntMatrix.identity(2)) == []


def test_kernel_over_f3():
    basis = kernel_basis_field([[1, 1]], FP(3))
    assert basis == [(1, 2)]


def test_kernel_lattice():
    basis = kernel_basis_int(IntMatrix.make([[2, -1], [4, -2]]))
    assert basis == [(1, 2)]


def test_solve_int():
    A = IntMatrix.make([[2, 0], [0, 3]])
    assert solve_int(A, [4, 9]) == [2, 3]
    assert solve_int(A, [1, 0]) is None
    assert in_column_span(A, [2, 3])


def test_kernel_into_lattice():
    # x with [1]x in 3Z: multiples of 3
    Phi = IntMatrix.make([[1]])
    L = IntMatrix.make([[3]])
    assert kernel_into_lattice(Phi, L) == [(3,)]


def rand_matrix(rng, m, n, lo=-9, hi=9):
    return IntMatrix.make([[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)])


def test_snf_randomized_identity():
    rng = random.Random(7)
    for _ in range(100):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        snf = smith_normal_form(rand_matrix(rng, m, n))
        assert snf.verify()


def test_cokernel_unimodular_invariance():
    rng = random.Random(11)
    for _ in range(40):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        M = rand_matrix(rng, m, n)
        inv = cokernel_invariants(M, m)
        # random unimodular row/column operations must not change the answer
        A = M.to_lists()
        for _ in range(6):
            if rng.random() < 0.5 and m > 1:
                i, j = rng.sample(range(m), 2)
                c = rng.randint(-3, 3)
                A[i] = [a + c * b for a, b in zip(A[i], A[j])]
            elif n > 1:
                i, j = rng.sample(range(n), 2)
                c = rng.randint(-3, 3)
                for row in A:
                    row[i] += c * row[j]
        assert cokernel_invariants(IntMatrix.make(A), m) == inv


@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=1, max_size=5))
@settings(max_examples=60)
def test_kernel_annihilates_and_counts(rows):
    M = IntMatrix.make(rows)
    basis = kernel_basis_int(M)
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M.entries)
    rank = len(kernel_basis_field([list(map(int, r)) for r in rows], QQ))
    assert len(basis) == rank  # cols - rank(M) both ways
