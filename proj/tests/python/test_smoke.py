"""Smoke tests for the pywkam extension module."""

import math
import sys

import pywkam


def check(cond, msg):
    if not cond:
        print("FAIL:", msg)
        sys.exit(1)
    print("ok:", msg)


def main():
    grid = pywkam.GridSpec.create(1, 2, 16)
    check(grid.h == 0.25 and grid.tau == 1 / 32, "grid arithmetic")

    free = pywkam.builtin_model("free")
    check(abs(free.H([0.3], 0.0, [0.8]) - 0.32) < 1e-15, "free Hamiltonian value")

    est = pywkam.estimate_effective_hamiltonian([0.6], free, grid)
    check(est.converged, "effective estimate converges")
    check(abs(est.H_bar - 0.18) < 1e-12, "free effective constant c^2/2")

    sol = pywkam.find_periodic_solution([0.6], free, grid, tol=1e-12)
    check(sol.converged and sol.residual <= 1e-12, "periodic solution residual")

    ma = pywkam.mather_measure(sol, free, [2 * grid.K], tol=1e-8)
    check(ma.converged and abs(ma.defect) <= 1e-10, "mather defect")
    check(abs(ma.measure.total_mass - 1.0) <= 1e-10, "measure mass")

    rho = pywkam.rotation_vector(sol, free, 2 * grid.K)
    check(abs(rho[0] - 0.6) <= 1e-12, "rotation vector equals c")

    mech = pywkam.builtin_model("mechanical-1d")
    cp = pywkam.cell_problem_1d(mech, 0.0)
    check(abs(cp.c0 - 4 / math.pi) <= 1e-9, "oracle critical slope")
    check(abs(cp.H_bar - 1.0) <= 1e-12, "oracle effective value at c=0")

    v = pywkam.ScalarField.zeros(grid, pywkam.Parity.odd)
    v.set([1], 0.1)
    check(v.at([1]) == 0.1, "field set/get")
    stepped = pywkam.step_backward(v, 0.0, [0.0], free)
    check(stepped.parity == pywkam.Parity.even, "step flips parity")

    print("all smoke tests passed")


if __name__ == "__main__":
    main()
