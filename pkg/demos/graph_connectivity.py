"""Reading vertex connectivity off an adjacency matrix.

A graph is k-connected exactly when its adjacency matrix is a g_k matrix,
so one pass of the g_k test replaces an enumeration of vertex cuts.
"""

from posmat import (
    audit_all_k,
    complete_graph,
    connectivity_bruteforce,
    cycle_graph,
    is_k_connected_via_gk,
    path_graph,
    petersen_graph,
)


def main():
    named = {
        "path on 5": path_graph(5),
        "cycle on 6": cycle_graph(6),
        "complete on 5": complete_graph(5),
        "Petersen": petersen_graph(),
    }
    for name, G in named.items():
        rep = connectivity_bruteforce(G)
        via_matrix = max((k for k in range(1, G.n) if is_k_connected_via_gk(G, k)), default=0)
        cut = rep.min_cut if rep.min_cut is not None else "none"
        print(f"{name}: kappa by cuts = {rep.kappa}, by adjacency matrix = {via_matrix}, min cut {cut}")

    print("\nFour equivalent forms on the Petersen graph:")
    for r in audit_all_k(petersen_graph()):
        print(f"  k={r.k}: cut {r.cut_based}, matrix {r.matrix_based}, "
              f"witness {r.witness_based}, deficiency {r.deficiency_based}")


if __name__ == "__main__":
    main()
