"""Window-averaged quantum z against spin size for the trapped couplings.

Shows the I = 7/2 quantum means approaching the mean-field values only as
the spin grows.  Prints a table; no files written.
"""

from nmrjj import protocol, run_sweep
from nmrjj.bifurcation import bifurcation_z0

TWO_I = (7, 15, 31, 63, 127)

if __name__ == "__main__":
    lams = protocol.TRAPPED_LAMBDAS
    grids = [protocol.grid_for(t) for lam, t in zip(protocol.LAMBDAS, protocol.T_PI_S) if lam in lams]
    print("2I    " + "  ".join(f"lam={lam:<5}" for lam in lams))
    for two_I in TWO_I:
        rows = run_sweep(two_I / 2, lams, grids)[::2]
        print(f"{two_I:<5} " + "  ".join(f"{r.z_mean_quantum:+.4f}  " for r in rows))
    classical = run_sweep(protocol.SPIN, lams, grids)[::2]
    print("mf    " + "  ".join(f"{r.z_mean_classical:+.4f}  " for r in classical))
    print("z0    " + "  ".join(f"{bifurcation_z0(lam):+.4f}  " for lam in lams))
