"""Utilily functions for visualization"""

import networkx as nx
import matplotlib.pyplot as plt


def plot_graph(triples, vertices, marks=(), title=None, figsize=(7, 7), layout="spring", fontsize=11, seed=0,
               save_to=None, dpi=300, **kwargs):
    """Plot a labeled digraph. Parallel edges with different labels are drawn once with joined labels.

    Parameters
    ----------
    triples : iterable of tuples with 3 str
        Labeled edges `(source, label, target)`.
    vertices : iterable of str
        Vertices to draw, including isolated marks.
    marks : iterable of str, optional
        Vertices highlighted with a different color.
    title : str, optional
        The title of the plot.
    figsize : array-like with length 2, optional, defaults to (7, 7)
        Output figure size.
    layout : {"spring", "circular", "kamada_kawai"}, optional, defaults to "spring"
        networkx layout used to place vertices.
    fontsize : int, optional, defaults to 11
        The size of the text on the plot.
    seed : int, optional, defaults to 0
        Seed of the spring layout.
    save_to : str, optional
        If given, save plot to the path specified.
    dpi : int, optional, defaults to 300
        The resolution of saved figure in dots per inch.
    kwargs : misc, optional
        Additional named arguments for :func:`networkx.draw_networkx_nodes`.

    Returns
    -------
    ax : matplotlib.axes.Axes
        Axes with the drawn graph.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(vertices)
    edge_labels = {}
    for source, label, target in triples:
        graph.add_edge(source, target)
        edge_labels.setdefault((source, target), []).append(label)
    edge_labels = {edge: ",".join(sorted(labels)) for edge, labels in edge_labels.items()}

    layouts = {"spring": lambda g: nx.spring_layout(g, seed=seed), "circular": nx.circular_layout,
               "kamada_kawai": nx.kamada_kawai_layout}
    if layout not in layouts:
        raise ValueError(f"Unknown layout {layout}, available options are {', '.join(layouts)}")
    pos = layouts[layout](graph)

    marks = set(marks)
    node_color = ["tab:orange" if vertex in marks else "tab:blue" for vertex in graph.nodes]
    _, ax = plt.subplots(figsize=figsize)
    nx.draw_networkx_nodes(graph, pos, ax=ax, node_color=node_color, **kwargs)
    nx.draw_networkx_labels(graph, pos, ax=ax, font_size=fontsize)
    nx.draw_networkx_edges(graph, pos, ax=ax, arrows=True, connectionstyle="arc3,rad=0.1")
    nx.draw_networkx_edge_labels(graph, pos, edge_labels=edge_labels, ax=ax, font_size=fontsize)
    ax.set_axis_off()
    if title is not None:
        ax.set_title(title, fontsize=fontsize)
    if save_to is not None:
        plt.savefig(save_to, dpi=dpi, bbox_inches="tight", pad_inches=0.1)
    return ax
