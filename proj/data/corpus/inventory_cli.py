import argparse
import sys

parser = argparse.ArgumentParser(description="Toy inventory CLI")
sub = parser.add_subparsers(dest="cmd", required=True)
add = sub.add_parser("add")
add.add_argument("name")
add.add_argument("qty", type=int)
sub.add_parser("list")

STOCK = {"apple": 3}


def cmd_add(ns):
    STOCK[ns.name] = STOCK.get(ns.name, 0) + ns.qty
    return 0


def cmd_list(ns):
    width = max(map(len, STOCK), default=0)
    for name, qty in sorted(STOCK.items()):
        print(name.ljust(width), qty)
    return 0


HANDLERS = {"add": cmd_add, "list": cmd_list}


def main(argv=None):
    ns = parser.parse_args(argv)
    return HANDLERS[ns.cmd](ns)


if __name__ == "__main__":
    main(["add", "pear", "4"])
    sys.exit(main(["list"]))
