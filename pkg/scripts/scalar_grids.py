"""Scalar grid checks, the g minimum, and sign-change searches, printed as a table."""
from tsallis_ops import scalar_checks as sc


def main():
    for c in sc.scalar_grid_suite() + [sc.expv_hermite_by_convexity(0.01, 0.5),
                                       sc.expv_hermite_by_convexity(0.5, 1.0), sc.lnv_below_expv(-1)]:
        where = "" if c.holds else f"  worst at {c.worst}"
        print(f"{'ok  ' if c.holds else 'FAIL'} {c.name:48s} n={c.points:6d} margin={c.min_margin:+.3e}{where}")
    print()
    for v in (0.1, 0.3, 0.5, 0.7, 0.9):
        loc, val, gap = sc.g_remark_minimum_error(v)
        print(f"g minimum v={v}: |x - x*| = {loc:.2e}  |g - g*| = {val:.2e}  grid gap {gap:.2e}")
    print()
    for cid in ("FURUICHI_36_VS_TANGENT", "DRAGOMIR_VS_XI_PSI"):
        for r in sc.search_nonordering(cid):
            print(f"{cid} {r.comparison}: both signs={r.found}")
            print(f"    + {r.positive}")
            print(f"    - {r.negative}")


if __name__ == "__main__":
    main()
