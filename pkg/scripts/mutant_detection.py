"""Run every seeded mutant and report which suite catches it."""
import time

from kanlift.suites import MUTANTS, detect_mutant


def main():
    missed = 0
    for mutant in MUTANTS:
        t0 = time.perf_counter()
        suite = detect_mutant(mutant)
        missed += suite is None
        print(f"{mutant.target:8} {mutant.name:24} caught by {suite or 'NOTHING'} "
              f"({time.perf_counter() - t0:.2f}s)")
    raise SystemExit(1 if missed else 0)


if __name__ == "__main__":
    main()
