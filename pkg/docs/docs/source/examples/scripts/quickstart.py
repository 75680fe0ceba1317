"""Quick Start Guide for Conway Table.

This script expands factorizations and verifies families of the table.
"""

from conway_table.notation import check_identity, expand, parse
from conway_table.oracle import point_check
from conway_table.polyring import all_ones
from conway_table.registry import FamilyRegistry, summary_frame, verify_all


def expansion_example():
    """Expand the trefoil family and check two factorizations of one family.

    This example shows how to:
    1. Parse a factorization
    2. Expand it to its Conway function
    3. Evaluate the seed, where every conway is 1
    4. Check an asserted equality symbolically and at random points
    """
    trefoil = expand(parse("row2(a1,1) M mat2(0,a2;a2,1) M col2(a3,1)"))
    print(f"Conway function: {trefoil}")
    print(f"Conway number:   {trefoil.evaluate(all_ones(trefoil))}")

    solomon = parse(
        "row2(a1 a2, a1 + a2) M col2(a3 a4, a3 + a4) = "
        "row2(a1, 1) M mat2(0, a2; a2, 1) M mat2(0, a3; a3, 1) M col2(a4, 1)"
    )
    check = check_identity(solomon)
    print(f"Factorizations agree: {check.agree} ({check.branches[0].term_count()} terms)")
    print(f"Random points agree:  {point_check(solomon, trials=50, seed=1)}")


def registry_example():
    """Verify every family and summarise the Conway numbers by seed.

    This example demonstrates:
    1. Loading the shipped registry
    2. Verifying all families with the independent oracle
    3. Building the summary table
    """
    registry = FamilyRegistry.load()
    records = list(registry)
    reports = verify_all(records, jobs=4, oracle_trials=20)
    print(f"{sum(r.passed for r in reports)}/{len(reports)} families verified")

    frame = summary_frame(records, reports)
    print(frame.groupby("seed", sort=False)["conway_number"].agg(["count", "first"]))


if __name__ == "__main__":
    print("Running expansion example...")
    expansion_example()
    print("\nRunning registry example...")
    registry_example()
