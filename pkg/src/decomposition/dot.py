"""DOT dumps of decomposition trees for debugging."""
from typing import Iterable, List, Optional, Tuple

from src.decomposition.bc import BCTree
from src.decomposition.spqr import SPQRTree
from src.treecotree.index import TreeCotreeIndex


def _quote(text: str) -> str:
    return '"' + text.replace('"', r"\"") + '"'


def bc_tree_dot(bc: BCTree, highlight: Optional[Iterable[Tuple[str, int]]] = None) -> str:
    marked = set(highlight or ())
    lines: List[str] = ["graph bc {"]
    for node in sorted(bc.tree.nodes):
        kind, i = node
        if kind == "B":
            label = f"B{i}: " + " ".join(f"{a}-{b}" for a, b in bc.blocks[i])
            shape = "box"
        else:
            label, shape = f"C {i}", "ellipse"
        style = ", style=bold" if node in marked else ""
        lines.append(f"  {_quote(f'{kind}{i}')} [label={_quote(label)}, shape={shape}{style}];")
    for a, b in sorted(bc.tree.edges, key=lambda e: tuple(sorted(e))):
        lines.append(f"  {_quote(f'{a[0]}{a[1]}')} -- {_quote(f'{b[0]}{b[1]}')};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def spqr_tree_dot(spqr: SPQRTree, highlight: Optional[Iterable[int]] = None) -> str:
    marked = set(highlight or ())
    lines: List[str] = ["graph spqr {"]
    for i, node in enumerate(spqr.nodes):
        parts = [f"{e.a}-{e.b}" + ("*" if e.virtual else "") for e in node.edges]
        style = ", style=bold" if i in marked else ""
        lines.append(f"  n{i} [label={_quote(f'{node.kind}{i}: ' + ' '.join(parts))}, shape=box{style}];")
    for i, j in sorted(tuple(sorted(e)) for e in spqr.tree.edges):
        a, b = spqr.shared_pair(i, j)
        lines.append(f"  n{i} -- n{j} [label={_quote(f'{a},{b}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_cotree_dot(index: TreeCotreeIndex) -> str:
    """Primal spanning tree T (solid, vertices) and dual tree T* (dashed, faces f<i>)."""
    g = index.graph
    lines = ["graph tree_cotree {"]
    for e in index.tree_edges():
        a, b = g.endpoints(e)
        lines.append(f"  v{a} -- v{b} [label=\"{e}\"];")
    for e in index.cotree_edges():
        fa, fb = g.edge_faces(e)
        lines.append(f"  f{fa} -- f{fb} [label=\"{e}\", style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
