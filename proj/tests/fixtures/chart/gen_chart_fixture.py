#!/usr/bin/env python3
"""Turns LaTeX Adams chart tables into a loadable dataset plus expected chart text.

Every displayed symbol becomes a generator of its bidegree, so basis monomials are
single generators. Within one bidegree, indices follow the order in which summands
are displayed.

usage: gen_chart_fixture.py SOURCE.md OUTDIR
"""
import csv
import io
import re
import sys
from collections import defaultdict
from pathlib import Path

CAPTION = re.compile(
    r"\\caption\{[^$]*\$(S\^0|S\^0/\\nu)\$ for \$(?:(\d+) \\le )?s \\le (\d+)\$ in stem (\d+)\}"
)
GROUP = re.compile(r"^\s*\\multirow\{\d+\}\{\*\}\{([0-9-]+)\}\s*&(.*)$")
CONT = re.compile(r"^\s*&(.*)$")
DR = re.compile(r"^\$d_\{(\d+)\}(\^\{-1\})?\$$")


def split_top(expr):
    parts, depth, cur = [], 0, ""
    for ch in expr:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p for p in parts if p]


def strip_math(cell):
    cell = cell.strip()
    if cell.startswith("$") and cell.endswith("$"):
        return cell[1:-1]
    return cell


def cells_of(body):
    body = body.split("\\\\")[0]
    return [c.strip() for c in body.split("&")]


def read_tables(text):
    tables = []
    lines = text.splitlines()
    start = 0
    for i, line in enumerate(lines):
        m = CAPTION.search(line)
        if not m:
            continue
        block = lines[start:i]
        start = i + 1
        j = max(k for k, l in enumerate(block) if "\\begin{tabular}" in l)
        spectrum = "S0" if m.group(1) == "S^0" else "Cnu"
        s_lo = int(m.group(2) or 0)
        s_hi = int(m.group(3))
        stem = int(m.group(4))
        rows = []
        label = None
        for l in block[j:]:
            g = GROUP.match(l)
            c = None if g else CONT.match(l)
            if g:
                label, body = g.group(1), g.group(2)
            elif c and label is not None:
                body = c.group(1)
            else:
                continue
            if "\\multicolumn" in body:
                rows.append((label, None))
                continue
            cells = cells_of(body)
            if len(cells) != 3:
                raise SystemExit(f"unexpected row: {l!r}")
            rows.append((label, cells))
        tables.append(dict(spectrum=spectrum, stem=stem, s_lo=s_lo, s_hi=s_hi, rows=rows))
    return tables


class Registry:
    def __init__(self):
        self.first_seen = {}  # (spec, stem, s) -> list of symbols in order of appearance
        self.edges = defaultdict(set)

    def note(self, spec, stem, s, symbols):
        key = (spec, stem, s)
        seen = self.first_seen.setdefault(key, [])
        for sym in symbols:
            if sym not in seen:
                seen.append(sym)
        for a, b in zip(symbols, symbols[1:]):
            self.edges[key].add((a, b))

    def order(self, key):
        syms = self.first_seen[key]
        preds = {s: set() for s in syms}
        for a, b in self.edges[key]:
            preds[b].add(a)
        out = []
        while len(out) < len(syms):
            ready = [s for s in syms if s not in out and preds[s] <= set(out)]
            if not ready:
                raise SystemExit(f"inconsistent display order at {key}")
            out.append(ready[0])
        return out


def main():
    src, outdir = Path(sys.argv[1]), Path(sys.argv[2])
    tables = read_tables(src.read_text())
    reg = Registry()
    facts = []
    for t in tables:
        for label, cells in t["rows"]:
            if cells is None:
                continue
            s = int(label)
            elem = split_top(strip_math(cells[0]))
            reg.note(t["spectrum"], t["stem"], s, elem)
            dr, value = cells[1], cells[2]
            if value == "Permanent":
                facts.append((t["spectrum"], t["stem"], s, elem, 9000, None))
                continue
            m = DR.match(dr)
            r = int(m.group(1))
            inverse = bool(m.group(2))
            vdeg = (t["stem"] + 1, s - r) if inverse else (t["stem"] - 1, s + r)
            level = r if inverse else 10000 - r
            v = strip_math(value)
            if v == "?":
                facts.append((t["spectrum"], t["stem"], s, elem, level, None))
                continue
            vs = split_top(v)
            reg.note(t["spectrum"], vdeg[0], vdeg[1], vs)
            facts.append((t["spectrum"], t["stem"], s, elem, level, (vdeg, vs)))

    index = {}
    per_spec = defaultdict(list)
    for key in sorted(reg.first_seen):
        for i, sym in enumerate(reg.order(key)):
            index[key + (sym,)] = i
            per_spec[key[0]].append((key[1], key[2], i, sym))

    outdir.mkdir(parents=True, exist_ok=True)

    def write(name, header, rows):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        (outdir / name).write_text(buf.getvalue())

    for spec, entries in per_spec.items():
        ring = spec == "S0"
        gens, basis = [], []
        if ring:
            basis.append([0, "", 0, 0, "[NULL]"])
        for gid, (stem, s, i, sym) in enumerate(entries):
            gens.append([gid, sym, stem, s])
            basis.append([i, f"{gid},1" if ring else f"{gid}", stem, s, "[NULL]"])
        write(f"{spec}_AdamsE2_generators.csv", ["id", "name", "stem", "s"], gens)
        write(f"{spec}_AdamsE2_relations.csv", ["rel", "stem", "s"], [])
        write(f"{spec}_AdamsE2_basis.csv", ["index", "mon", "stem", "s", "d2"], basis)

    ss = defaultdict(list)
    for spec, stem, s, elem, level, val in facts:
        base = ",".join(str(i) for i in sorted(index[(spec, stem, s, e)] for e in elem))
        if val is None:
            diff = "[NULL]"
        else:
            (vs_, vt_), vs = val
            diff = ",".join(str(i) for i in sorted(index[(spec, vs_, vt_, e)] for e in vs))
        ss[spec].append([stem, s, base, diff, level])
    for spec, rows in ss.items():
        write(f"{spec}_AdamsE2_ss.csv", ["stem", "s", "base", "diff", "level"], rows)

    listing = []
    for k, t in enumerate(tables):
        name = f"{t['spectrum']}_{t['stem']}_{t['s_lo']}_{t['s_hi']}.txt"
        lines = [f"{t['spectrum']} stem {t['stem']}", "s | Elements | d_r | value"]
        current = None
        for label, cells in t["rows"]:
            if cells is None:
                lines.append(f"{label} |  |  |".rstrip())
                current = None
                continue
            shown = label if label != current else ""
            current = label
            elem = "+".join(split_top(strip_math(cells[0])))
            dr = strip_math(cells[1]) if cells[1] else ""
            value = "Permanent" if cells[2] == "Permanent" else "+".join(split_top(strip_math(cells[2])))
            lines.append(f"{shown} | {elem} | {dr} | {value}".rstrip())
        (outdir / name).write_text("\n".join(lines) + "\n")
        listing.append([t["spectrum"], t["stem"], t["s_lo"], t["s_hi"], name])
    write("charts.csv", ["spectrum", "stem", "s_lo", "s_hi", "expected"], listing)


if __name__ == "__main__":
    main()
