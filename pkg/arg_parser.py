from argparse import ArgumentParser, ArgumentTypeError, BooleanOptionalAction

from counting import DEFAULT_BUDGET
from dynamics import PathFollowConfig
from tools import STANDARD_WINDOW

_DEFAULTS = PathFollowConfig()


def parse_window(text):
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise ArgumentTypeError(f"window must be four comma-separated numbers, got '{text}'")
    if len(values) != 4:
        raise ArgumentTypeError(f"window needs re_min,re_max,im_min,im_max, got '{text}'")
    return values


def positive_int(text):
    value = int(text)
    if value < 1:
        raise ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


class Arg_parser():
    def __init__(self, argv=None):
        parser = ArgumentParser(
            prog="molecule.py",
            description="Count and locate period-n hyperbolic components on the main molecule.",
        )
        subparsers = parser.add_subparsers(dest="command", required=True)

        count = subparsers.add_parser("count", help="print M(n)")
        count.add_argument("n", type=int)
        count.add_argument("--method", choices=["direct", "recursive", "closed"], default="recursive")
        count.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET)

        table = subparsers.add_parser("table", help="M(n), nu(n) and their ratio for n = 1..max")
        table.add_argument("--max", dest="max_n", type=int, default=24)
        table.add_argument("--format", choices=["json", "csv"], default="csv")
        table.add_argument("--method", choices=["direct", "recursive"], default="direct")
        table.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET)

        bell = subparsers.add_parser("bell", help="ordered Bell numbers N(m)")
        bell.add_argument("m", type=int, nargs="?", default=None)
        bell.add_argument("--max", dest="max_m", type=int, default=None, help="print N(0) .. N(max), one per line")

        addresses = subparsers.add_parser("addresses", help="satellite addresses of period n")
        addresses.add_argument("n", type=int)
        addresses.add_argument("--format", choices=["json"], default="json")
        addresses.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET)

        breakdown = subparsers.add_parser("breakdown", help="M(n) split by the period of the first satellite")
        breakdown.add_argument("n", type=int)

        verify = subparsers.add_parser("verify", help="locate every molecule center of period n")
        verify.add_argument("n", type=int)
        self._add_numerics(verify)
        verify.add_argument("--sweep", action=BooleanOptionalAction, default=True)

        centers = subparsers.add_parser("centers", help="all centers of exact period n by root sweep")
        centers.add_argument("n", type=int)
        self._add_numerics(centers)

        plot = subparsers.add_parser("plot", help="escape-time image with molecule centers marked")
        plot.add_argument("n", type=int)
        plot.add_argument("--width", type=int, default=800)
        plot.add_argument("--height", type=int, default=600)
        # pass negative values as --window=-2,0.75,-1.15,1.15
        plot.add_argument("--window", type=parse_window, default=STANDARD_WINDOW)
        plot.add_argument("--max-iter", type=int, default=256)
        plot.add_argument("--escape-radius", type=float, default=2.0)
        plot.add_argument("--out", required=True)
        self._add_numerics(plot)

        figure = subparsers.add_parser("figure", help="growth plot of M(n) against nu(n)")
        figure.add_argument("--max", dest="max_n", type=int, default=40)
        figure.add_argument("--out", required=True)

        self.args = parser.parse_args(argv)

    @staticmethod
    def _add_numerics(sub):
        sub.add_argument("--tol", type=float, default=_DEFAULTS.newton_tol, help="Newton tolerance")
        sub.add_argument("--steps", type=int, default=_DEFAULTS.multiplier_steps)
        sub.add_argument("--newton-max-iter", type=int, default=_DEFAULTS.newton_max_iter)
        sub.add_argument("--entry-offset", type=float, default=_DEFAULTS.entry_offset)
        sub.add_argument("--match-tol", type=float, default=_DEFAULTS.match_tol)
        sub.add_argument("--distinct-tol", type=float, default=_DEFAULTS.distinct_tol)
        sub.add_argument("--sweep-limit", type=int, default=_DEFAULTS.sweep_limit)
        sub.add_argument("--sweep-max-iter", type=int, default=_DEFAULTS.sweep_max_iter)

    def return_args(self):
        return self.args

    def path_follow_config(self):
        """PathFollowConfig from the numeric flags; ValueError on inconsistent values."""
        args = self.args
        return PathFollowConfig(
            multiplier_steps=args.steps,
            newton_tol=args.tol,
            newton_max_iter=args.newton_max_iter,
            entry_offset=args.entry_offset,
            match_tol=args.match_tol,
            distinct_tol=args.distinct_tol,
            sweep_limit=args.sweep_limit,
            sweep_max_iter=args.sweep_max_iter,
        )
