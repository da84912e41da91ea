"""Lower bounds on A_2(n, d, k) next to the codes that witness them.

    python3 demos/bounds_table.py
"""

from grasscode.cli import main

if __name__ == "__main__":
    main(["bounds", "--k", "4", "--d", "4", "--n", "10:16"])
    print()
    main(["bounds", "--k", "5", "--d", "8", "--n", "19:20"])
