"""Graphviz DOT rendering of hierarchy levels and of the merge tree."""

from collections.abc import Sequence

from coarsen.hierarchy import GraphHierarchy


def node_name(level: int, index: int) -> str:
    return f"L{level}_N{index}"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_label(hierarchy: GraphHierarchy, level: int, index: int, token_labels: Sequence[str]) -> str:
    representative = hierarchy.levels[level].representatives[index]
    label = token_labels[representative] if representative < len(token_labels) else str(representative)
    size = len(hierarchy.levels[level].members[index])
    if size > 1:
        label += f" (+{size - 1})"
    return label


def level_to_dot(hierarchy: GraphHierarchy, level: int, token_labels: Sequence[str] = ()) -> str:
    a = hierarchy.adjacency(level)
    lines = [f"graph L{level} {{"]
    for i in range(a.shape[0]):
        attributes = [f"label={_quote(_node_label(hierarchy, level, i, token_labels))}"]
        if a[i, i]:
            attributes.append(f"internal={int(a[i, i])}")
        lines.append(f"\t{node_name(level, i)} [{', '.join(attributes)}];")
    for i in range(a.shape[0]):
        for j in range(i + 1, a.shape[0]):
            if a[i, j] == 0:
                continue
            weight = f" [weight={int(a[i, j])}]" if a[i, j] > 1 else ""
            lines.append(f"\t{node_name(level, i)} -- {node_name(level, j)}{weight};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def merge_tree_to_dot(hierarchy: GraphHierarchy, token_labels: Sequence[str] = ()) -> str:
    """Supernode -> member edges, one cluster per level."""
    lines = ["digraph merge_tree {", "\trankdir=BT;"]
    for level in range(len(hierarchy.levels)):
        lines.append(f"\tsubgraph cluster_L{level} {{")
        lines.append(f"\t\tlabel={_quote(f'level {level}')};")
        for i in range(hierarchy.levels[level].size):
            label = _quote(_node_label(hierarchy, level, i, token_labels))
            lines.append(f"\t\t{node_name(level, i)} [label={label}];")
        lines.append("\t}")
    for level, matching in enumerate(hierarchy.matchings):
        for fine, coarse in enumerate(matching.assignment):
            lines.append(f"\t{node_name(level, fine)} -> {node_name(level + 1, coarse)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
