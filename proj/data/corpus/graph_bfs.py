from collections import deque

EDGES = [
    ("a", "b"), ("a", "c"), ("b", "d"),
    ("c", "d"), ("d", "e"), ("f", "g"),
]


def adjacency(edges, directed=False):
    graph = {}
    for u, v in edges:
        graph.setdefault(u, set()).add(v)
        if not directed:
            graph.setdefault(v, set()).add(u)
    return graph


def shortest_path(graph, start, goal):
    parents = {start: None}
    frontier = deque([start])
    while frontier:
        node = frontier.popleft()
        if node == goal:
            path = []
            while node is not None:
                path.append(node)
                node = parents[node]
            return path[::-1]
        for nxt in sorted(graph.get(node, ())):
            if nxt not in parents:
                parents[nxt] = node
                frontier.append(nxt)
    return None


def components(graph):
    seen, groups = set(), []
    for node in graph:
        if node in seen:
            continue
        group = set(shortest_path(graph, node, node) or [])
        stack = [node]
        while stack:
            cur = stack.pop()
            if cur not in seen:
                seen.add(cur)
                group.add(cur)
                stack.extend(graph[cur] - seen)
        groups.append(group)
    return groups


g = adjacency(EDGES)
print(shortest_path(g, "a", "e"))
print(len(components(g)))
