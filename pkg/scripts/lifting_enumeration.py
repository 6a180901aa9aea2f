"""Print the built-in liftings of every preorder/topology on a small carrier."""
import argparse

from kanlift import engine as E
from kanlift import fibration as fib
from kanlift import io
from kanlift.monad import powerset_monad
from kanlift.suites import carriers, kind_tag


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=2)
    ap.add_argument("--kind", choices=[k.value for k in E.Kind], default="lower-pre")
    args = ap.parse_args()
    m = powerset_monad()
    kind = E.Kind(args.kind)
    param = E.BUILTIN_PARAMS[kind]()
    c = carriers(args.points)[args.points]
    for x in fib.all_preorders(c, kind_tag(kind)):
        lifted = E.codensity_lift(m, param, x).result
        agrees = lifted == E.closed_form_lift(kind, x)
        print(f"X = {sorted((a, b) for a, b in x.data if a != b)}  closed form agrees: {agrees}")
        print(io.render_table(lifted))
        print()


if __name__ == "__main__":
    main()
