import sys

from tqdm import tqdm

from addresses import address_to_json, enumerate_addresses
from arg_parser import Arg_parser
from counting import (
    check_positive,
    molecule_count_by_first_link,
    molecule_count_closed,
    molecule_count_direct,
    molecule_count_recursive,
    ordered_bell,
)
from dynamics import center_to_json
from sweep import all_centers_sweep
from tools import (
    PlotSpec,
    draw_crosses,
    dumps,
    escape_time_image,
    plot_growth,
    rows_to_csv,
    save_ppm,
    table_rows,
)
from verifier import locate_molecule_centers, verify_molecule_count

EXIT_OK, EXIT_VERDICT_FALSE, EXIT_USAGE = 0, 1, 2


def cmd_count(args, parser):
    if args.method == "direct":
        value = molecule_count_direct(args.n, budget=args.budget)
    elif args.method == "recursive":
        value = molecule_count_recursive(args.n)
    elif args.method == "closed":
        value = molecule_count_closed(args.n)
    else:
        raise ValueError(f"Unrecognized method {args.method}")
    sys.stdout.write(f"{value}\n")
    return EXIT_OK


def cmd_table(args, parser):
    rows = table_rows(args.max_n, method=args.method, budget=args.budget)
    if args.format == "csv":
        sys.stdout.write(rows_to_csv(rows))
    else:
        sys.stdout.write(dumps(rows))
    return EXIT_OK


def cmd_bell(args, parser):
    if args.max_m is not None:
        sys.stdout.write("".join(f"{ordered_bell(m)}\n" for m in range(args.max_m + 1)))
    elif args.m is not None:
        sys.stdout.write(f"{ordered_bell(args.m)}\n")
    else:
        raise ValueError("bell needs m or --max")
    return EXIT_OK


def cmd_addresses(args, parser):
    entries = [
        {"rotations": address_to_json(a), "period": args.n}
        for a in enumerate_addresses(args.n, budget=args.budget)
    ]
    sys.stdout.write(dumps(entries))
    return EXIT_OK


def cmd_breakdown(args, parser):
    split = molecule_count_by_first_link(args.n)
    sys.stdout.write(dumps({str(d): count for d, count in split.items()}))
    return EXIT_OK


def cmd_verify(args, parser):
    report = verify_molecule_count(args.n, parser.path_follow_config(), sweep=args.sweep)
    sys.stdout.write(dumps(report.to_json()))
    return EXIT_OK if report.verdict else EXIT_VERDICT_FALSE


def cmd_centers(args, parser):
    centers = all_centers_sweep(args.n, parser.path_follow_config())
    sys.stdout.write(dumps([center_to_json(center) for center in centers]))
    return EXIT_OK


def cmd_plot(args, parser):
    view = PlotSpec(
        n=args.n,
        width=args.width,
        height=args.height,
        window=args.window,
        max_iter=args.max_iter,
        escape_radius=args.escape_radius,
    )
    failures = []
    centers = locate_molecule_centers(view.n, parser.path_follow_config(), failures)
    if failures:
        raise RuntimeError(f"could not locate every period-{view.n} center: {failures[0]}")
    image = escape_time_image(view)
    drawn = draw_crosses(image, [center.c for center in centers], view)
    save_ppm(image, args.out)
    tqdm.write(f"wrote {args.out} with {drawn} of {len(centers)} centers marked", file=sys.stderr)
    return EXIT_OK


def cmd_figure(args, parser):
    plot_growth(args.max_n, args.out)
    tqdm.write(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "table": cmd_table,
    "bell": cmd_bell,
    "addresses": cmd_addresses,
    "breakdown": cmd_breakdown,
    "verify": cmd_verify,
    "centers": cmd_centers,
    "plot": cmd_plot,
    "figure": cmd_figure,
}


def main(argv=None):
    parser = Arg_parser(argv)
    args = parser.return_args()
    try:
        if hasattr(args, "n"):
            check_positive(args.n)
        return COMMANDS[args.command](args, parser)
    except (ValueError, ArithmeticError, RuntimeError, OSError) as err:
        print(f"molecule.py {args.command}: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
