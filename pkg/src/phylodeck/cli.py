"""Command-line interface and file formats.

The plain-text network format is line based, UTF-8:

    # comment
    leaves: a b c
    edge a u
    edge u v
    edge u v     # repeated line = multi-edge; "edge v v" = loop
    edge v b
    edge v c

Tokens on the ``leaves:`` header are simultaneously vertex ids and leaf
labels; every other token names an internal vertex.  The serializer emits a
sorted, canonical line order so equal files are byte-identical.

Commands are pure: the same inputs produce byte-identical outputs (reports
are sorted, codes canonical, files written atomically).  Exit codes: 0 on
success, 1 on usage errors, 2 when an input fails validation, 3 when a
reconstruction is ambiguous or has no candidate.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .decks import (
    Deck,
    edge_deck,
    phylo_delete_leaf,
    phylo_deck,
    quarnet_on,
    quarnet_set,
    u_deck,
    x_deck,
)
from .enumerate import enumerate_networks, verify_class
from .equiv import code_hex
from .errors import Ambiguous, NetworkError, NoCandidate
from .netcore import (
    PseudoNetwork,
    _vkey,
    is_binary,
    is_decomposable,
    is_simple,
    is_tree,
    level,
    reticulation_number,
    validate_phylo,
)
from .reconstruct import (
    reconstruct_from_quarnets,
    reconstruction_number,
    reconstructions_from_cards,
)

SCHEMA = 1


def parse_pnet(text):
    """Parse the plain-text network format into a PseudoNetwork."""
    leaves = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if leaves is None:
            if not line.startswith("leaves:"):
                raise ValueError(
                    f"line {lineno}: expected 'leaves:' header, got {line!r}"
                )
            leaves = line[len("leaves:"):].split()
            if len(set(leaves)) != len(leaves):
                raise ValueError(f"line {lineno}: repeated leaf token")
            continue
        parts = line.split()
        if parts[0] != "edge" or len(parts) != 3:
            raise ValueError(
                f"line {lineno}: expected 'edge <v> <w>', got {line!r}"
            )
        edges.append((parts[1], parts[2]))
    if leaves is None:
        raise ValueError("missing 'leaves:' header")
    endpoints = {v for e in edges for v in e}
    isolated = [tok for tok in leaves if tok not in endpoints]
    return PseudoNetwork(edges, {tok: tok for tok in leaves}, isolated=isolated)


def _display_names(net):
    """Stable vertex -> token map: leaves keep their labels, internal
    vertices keep their own names unless those collide with a label."""
    name = {}
    used = set()
    for lab, v in sorted(net._by_label.items()):
        name[v] = lab
        used.add(lab)
    fresh = 0
    for v in sorted(net._adj, key=_vkey):
        if v in name:
            continue
        cand = str(v)
        while cand in used:
            cand = f"v{fresh}"
            fresh += 1
        name[v] = cand
        used.add(cand)
    return name


def format_pnet(net, comment=None):
    """Serialize a network deterministically (sorted, labels as leaf ids)."""
    name = _display_names(net)
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(("leaves: " + " ".join(sorted(net._by_label))).rstrip())
    rows = []
    for (u, v), mult in net.edge_classes():
        a, b = sorted((name[u], name[v]))
        rows.extend([f"edge {a} {b}"] * mult)
    lines.extend(sorted(rows))
    return "\n".join(lines).rstrip() + "\n"


def format_dot(net):
    """Render the network as Graphviz DOT; leaves are labeled boxes,
    internal vertices unlabeled points."""
    name = _display_names(net)
    labels = net.labels
    lines = ["graph network {", "  node [shape=point];"]
    for v in sorted(net._adj, key=_vkey):
        if v in labels:
            lines.append(f'  "{name[v]}" [shape=box, label="{labels[v]}"];')
    for (u, v), mult in net.edge_classes():
        a, b = sorted((name[u], name[v]))
        lines.extend([f'  "{a}" -- "{b}";'] * mult)
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- output plumbing ---------------------------------------------------------------


def _write_text(path, text):
    """Atomic write: a temp file in the target directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _dump_json(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(args, payload, text_lines):
    """Print the machine report with --json, the human lines otherwise."""
    if args.json:
        sys.stdout.write(_dump_json(payload))
    else:
        for line in text_lines:
            print(line)


def _read_network(path):
    return parse_pnet(Path(path).read_text(encoding="utf-8"))


def _out_dir(args):
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_manifest(path):
    """Read a manifest written by a deck/quarnet command, returning the
    parsed JSON and the directory its card files live in."""
    path = Path(path)
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path.name} is not valid JSON: {exc}") from exc
    if not isinstance(manifest, dict) or "cards" not in manifest:
        raise ValueError(f"{path.name} is not a deck manifest")
    return manifest, path.parent


def _deck_from_manifest(manifest, base):
    kind = manifest.get("kind")
    if kind not in ("leaf", "phylo"):
        raise ValueError(f"cannot reconstruct from a {kind!r} manifest")
    cards = {}
    for entry in manifest["cards"]:
        cards[entry["index"]] = _read_network(base / entry["file"])
    return Deck(kind, cards, frozenset(manifest["leaves"]))


# -- commands ----------------------------------------------------------------------


def _cmd_validate(args):
    net = _read_network(args.infile)
    validate_phylo(net)
    profile = {
        "leaves": sorted(net.label_set),
        "num_vertices": net.num_vertices,
        "num_edges": net.num_edges,
        "reticulation": reticulation_number(net),
        "level": level(net),
        "binary": is_binary(net),
        "simple": is_simple(net),
        "tree": is_tree(net),
        "decomposable": is_decomposable(net),
        "code": code_hex(net),
    }
    _emit(
        args,
        {"schema": SCHEMA, "command": "validate", "ok": True, "profile": profile},
        [
            "valid phylogenetic network",
            f"  leaves: {' '.join(profile['leaves'])}",
            f"  vertices: {profile['num_vertices']}  edges: {profile['num_edges']}",
            f"  reticulation: {profile['reticulation']}  level: {profile['level']}",
            f"  binary: {profile['binary']}  simple: {profile['simple']}"
            f"  tree: {profile['tree']}  decomposable: {profile['decomposable']}",
            f"  code: {profile['code']}",
        ],
    )
    return 0


def _write_deck(args, command, deck, file_stem):
    out = _out_dir(args)
    entries = []
    width = max(3, len(str(len(deck.cards))))
    for index in sorted(deck.cards, key=str):
        card = deck.cards[index]
        token = f"{index:0{width}d}" if isinstance(index, int) else str(index)
        filename = f"{file_stem}_{token}.pnet"
        _write_text(out / filename, format_pnet(card))
        entries.append(
            {"index": index, "file": filename, "code": code_hex(card)}
        )
    manifest = {
        "schema": SCHEMA,
        "command": command,
        "kind": deck.kind,
        "leaves": sorted(deck.origin_label_set),
        "cards": entries,
    }
    _write_text(out / "manifest.json", _dump_json(manifest))
    _emit(
        args,
        manifest,
        [f"wrote {len(entries)} cards and manifest.json to {out}"],
    )
    return 0


def _cmd_deck(args):
    net = _read_network(args.infile)
    validate_phylo(net)
    deck = u_deck(net, (args.leaf,)) if args.leaf else x_deck(net)
    return _write_deck(args, "deck", deck, "card")


def _cmd_phylo_deck(args):
    net = _read_network(args.infile)
    validate_phylo(net)
    if args.leaf:
        deck = Deck(
            "phylo",
            {args.leaf: phylo_delete_leaf(net, args.leaf)},
            frozenset(net.label_set),
        )
    else:
        deck = phylo_deck(net)
    return _write_deck(args, "phylo-deck", deck, "card")


def _cmd_edge_deck(args):
    net = _read_network(args.infile)
    validate_phylo(net)
    return _write_deck(args, "edge-deck", edge_deck(net), "card")


def _cmd_quarnets(args):
    net = _read_network(args.infile)
    validate_phylo(net)
    if args.subset:
        nets = [quarnet_on(net, args.subset)]
    else:
        nets = quarnet_set(net)
    out = _out_dir(args)
    entries = []
    for i, quarnet in enumerate(nets):
        filename = f"quarnet_{i:03d}.pnet"
        _write_text(out / filename, format_pnet(quarnet))
        entries.append(
            {
                "labels": sorted(quarnet.label_set),
                "file": filename,
                "code": code_hex(quarnet),
            }
        )
    manifest = {
        "schema": SCHEMA,
        "command": "quarnets",
        "kind": "quarnet",
        "leaves": sorted(net.label_set),
        "cards": entries,
    }
    _write_text(out / "manifest.json", _dump_json(manifest))
    _emit(
        args,
        manifest,
        [f"wrote {len(entries)} quarnets and manifest.json to {out}"],
    )
    return 0


def _cmd_reconstruct(args):
    manifest, base = _load_manifest(args.infile)
    deck = _deck_from_manifest(manifest, base)
    subset = args.subset if args.subset else tuple(deck.cards)
    target = (
        "binary"
        if all(is_binary(card) for card in deck.cards.values())
        else "any"
    )
    report = reconstructions_from_cards(deck, subset, target)
    payload = {
        "schema": SCHEMA,
        "command": "reconstruct",
        "kind": deck.kind,
        "subset": list(report.subset),
        "method": report.method,
        "unique": report.unique,
        "candidates": list(report.candidates),
        "witness_pnet": format_pnet(report.witness) if report.unique else None,
    }
    if report.unique:
        if args.out_dir:
            out = _out_dir(args)
            _write_text(out / "reconstruction.pnet", payload["witness_pnet"])
        _emit(
            args,
            payload,
            [payload["witness_pnet"].rstrip("\n")],
        )
        return 0
    _emit(
        args,
        payload,
        [
            f"ambiguous: {len(report.candidates)} candidate classes match "
            f"cards {', '.join(map(str, report.subset))}"
        ]
        if report.candidates
        else ["no candidate matches the chosen cards"],
    )
    return 3


def _cmd_recon_number(args):
    net = _read_network(args.infile)
    validate_phylo(net)
    number, report = reconstruction_number(net, detail=True)
    payload = {
        "schema": SCHEMA,
        "command": "recon-number",
        "code": code_hex(net),
        "number": number,
        "subset": list(report.subset) if report else None,
    }
    _emit(
        args,
        payload,
        [
            f"reconstruction number: {number} "
            f"(cards: {', '.join(map(str, report.subset))})"
        ]
        if number is not None
        else ["not reconstructible from its full leaf deck"],
    )
    return 0


def _cmd_assemble_quarnets(args):
    manifest, base = _load_manifest(args.infile)
    if manifest.get("kind") != "quarnet":
        raise ValueError("a quarnet manifest is required")
    quarnets = [
        _read_network(base / entry["file"]) for entry in manifest["cards"]
    ]
    labels = manifest["leaves"]
    universe = None
    if args.max_level is not None or args.max_ret is not None:
        universe = enumerate_networks(
            sorted(labels),
            max_level=args.max_level or 0,
            max_ret=_default_ret(args),
        )
    net = reconstruct_from_quarnets(quarnets, labels, universe=universe)
    text = format_pnet(net)
    payload = {
        "schema": SCHEMA,
        "command": "assemble-quarnets",
        "code": code_hex(net),
        "network_pnet": text,
    }
    if args.out_dir:
        out = _out_dir(args)
        _write_text(out / "assembled.pnet", text)
    _emit(args, payload, [text.rstrip("\n")])
    return 0


def _default_ret(args):
    """Reticulation cap when --max-ret is omitted: 0 for trees, else the
    enumeration budget for the requested level."""
    if args.max_ret is not None:
        return args.max_ret
    max_level = args.max_level or 0
    if max_level == 0:
        return 0
    return 6 if max_level <= 2 else 4


def _cmd_enumerate(args):
    max_level = args.max_level or 0
    max_ret = _default_ret(args)
    universe = enumerate_networks(args.n, max_level=max_level, max_ret=max_ret)
    payload = {
        "schema": SCHEMA,
        "command": "enumerate",
        "n": args.n,
        "max_level": max_level,
        "max_ret": max_ret,
        "count": len(universe),
        "codes": [code_hex(m) for m in universe],
    }
    if args.out_dir:
        out = _out_dir(args)
        entries = []
        width = max(5, len(str(len(universe))))
        for i, member in enumerate(universe):
            filename = f"net_{i:0{width}d}.pnet"
            _write_text(out / filename, format_pnet(member))
            entries.append({"file": filename, "code": code_hex(member)})
        manifest = dict(payload)
        manifest["members"] = entries
        del manifest["codes"]
        _write_text(out / "manifest.json", _dump_json(manifest))
    _emit(
        args,
        payload,
        [
            f"{payload['count']} networks on {args.n} leaves "
            f"(level <= {max_level}, reticulation <= {max_ret})"
        ],
    )
    return 0


def _cmd_verify(args):
    max_level = args.max_level or 0
    max_ret = _default_ret(args)
    checks = tuple(args.check) if args.check else ("leaf",)
    universe = enumerate_networks(args.n, max_level=max_level, max_ret=max_ret)
    report = verify_class(universe, checks=checks)
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "n": args.n,
        "max_level": max_level,
        "max_ret": max_ret,
        "checks": list(report.checks),
        "total": report.total,
        "counterexamples": [
            {"code": code, "check": check}
            for code, check in report.counterexamples
        ],
    }
    if args.out_dir:
        out = _out_dir(args)
        rows = []
        for row in report.members:
            entry = {"code": row.code}
            for check, field in (
                ("leaf", "leaf_reconstructible"),
                ("recon-number", "reconstruction_number"),
                ("edge", "edge_reconstructible"),
                ("phylo", "phylo_deck_reconstructible"),
                ("quarnet", "quarnet_reconstructible"),
            ):
                if check in report.checks:
                    entry[check] = getattr(row, field)
            rows.append(entry)
        full = dict(payload)
        full["members"] = rows
        _write_text(out / "report.json", _dump_json(full))
    summary = (
        f"{report.total} networks checked "
        f"({', '.join(report.checks)}); "
        f"{len(report.counterexamples)} counterexamples"
    )
    _emit(args, payload, [summary])
    return 0


def _cmd_export_dot(args):
    net = _read_network(args.infile)
    text = format_dot(net)
    if args.out_dir:
        out = _out_dir(args)
        _write_text(out / (Path(args.infile).stem + ".dot"), text)
        if not args.json:
            print(f"wrote {Path(args.infile).stem}.dot to {out}")
    elif not args.json:
        sys.stdout.write(text)
    if args.json:
        sys.stdout.write(
            _dump_json(
                {"schema": SCHEMA, "command": "export-dot", "dot": text}
            )
        )
    return 0


# -- argument parsing ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this interface reserves 2 for
    validation failures, so usage problems exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _comma_list(value):
    items = tuple(tok for tok in value.split(",") if tok)
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list")
    return items


def _build_parser():
    parser = _Parser(
        prog="phylodeck",
        description="Deck-based reconstruction of unrooted phylogenetic networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, help_text, **flags):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        if flags.get("infile"):
            p.add_argument("--in", dest="infile", required=True,
                           help=flags["infile"])
        if flags.get("out_dir"):
            required = flags["out_dir"] == "required"
            p.add_argument("--out-dir", default="." if required else None,
                           help="directory for output files"
                           + ("" if required else " (default: stdout only)"))
        if flags.get("leaf"):
            p.add_argument("--leaf", help="restrict to this single card")
        if flags.get("subset"):
            p.add_argument("--subset", type=_comma_list,
                           help=flags["subset"])
        if flags.get("universe"):
            p.add_argument("--n", type=int, required=True,
                           help="number of leaves")
            p.add_argument("--max-level", type=int, default=None,
                           help="level cap (default 0)")
            p.add_argument("--max-ret", type=int, default=None,
                           help="reticulation cap (default: budget for the level)")
        p.add_argument("--json", action="store_true",
                       help="machine-readable JSON on stdout")
        return p

    command("validate", _cmd_validate,
            "check a .pnet file and print its structural profile",
            infile="network file")
    command("deck", _cmd_deck,
            "write the leaf-deletion deck as card files plus a manifest",
            infile="network file", out_dir="required", leaf=True)
    command("phylo-deck", _cmd_phylo_deck,
            "write the repaired (phylogenetic) deck",
            infile="network file", out_dir="required", leaf=True)
    command("edge-deck", _cmd_edge_deck,
            "write the edge-deletion deck",
            infile="network file", out_dir="required")
    command("quarnets", _cmd_quarnets,
            "write the four-leaf subnetworks",
            infile="network file", out_dir="required",
            subset="four leaf labels, comma-separated")
    command("reconstruct", _cmd_reconstruct,
            "search for networks matching a deck manifest's cards",
            infile="manifest.json from the deck command", out_dir="optional",
            subset="card indices to use (default: all)")
    command("recon-number", _cmd_recon_number,
            "smallest number of cards that pins the network down",
            infile="network file")
    p = command("assemble-quarnets", _cmd_assemble_quarnets,
                "recover a network from a quarnet manifest",
                infile="manifest.json from the quarnets command",
                out_dir="optional")
    p.add_argument("--max-level", type=int, default=None,
                   help="candidate universe level cap (default 3)")
    p.add_argument("--max-ret", type=int, default=None,
                   help="candidate universe reticulation cap")
    command("enumerate", _cmd_enumerate,
            "generate every network of a small class",
            out_dir="optional", universe=True)
    command("verify", _cmd_verify,
            "sweep reconstructibility checks over a whole class",
            out_dir="optional", universe=True).add_argument(
        "--check", action="append",
        choices=("leaf", "recon-number", "edge", "phylo", "quarnet"),
        help="check to run (repeatable; default: leaf)")
    command("export-dot", _cmd_export_dot,
            "render a network as Graphviz DOT (leaves as labeled boxes)",
            infile="network file", out_dir="optional")
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    command = args.command
    try:
        return args.handler(args)
    except (Ambiguous, NoCandidate) as exc:
        _report_error(args, command, exc)
        return 3
    except (NetworkError, ValueError, OSError) as exc:
        _report_error(args, command, exc)
        return 2


def _report_error(args, command, exc):
    if getattr(args, "json", False):
        sys.stdout.write(
            _dump_json(
                {
                    "schema": SCHEMA,
                    "command": command,
                    "error": {
                        "type": type(exc).__name__,
                        "message": str(exc),
                    },
                }
            )
        )
    else:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
