"""Independent reference implementations used by the tests."""


def alignment_oracle(sbom, graph):
    """Brute-force set-difference classification, written independently of align()."""
    first_s, first_g = {}, {}
    for g in reversed(sbom):
        first_s[g.key] = g
    for g, scope in reversed(graph):
        first_g[g.key] = (g, scope)
    s_keys, g_keys = set(first_s), set(first_g)
    both = s_keys & g_keys
    matched = {first_s[k] for k in both if first_s[k].version == first_g[k][0].version}
    mism = {(k, first_s[k].version, first_g[k][0].version)
            for k in both if first_s[k].version != first_g[k][0].version}
    s_only = {first_s[k] for k in s_keys - g_keys}
    ignored = {first_g[k][0] for k in g_keys - s_keys if first_g[k][1] == "test"}
    g_only = {first_g[k] for k in g_keys - s_keys if first_g[k][1] != "test"}
    kinds = [name for name, items in (("version_mismatch", mism), ("sbom_extra", s_only),
                                      ("graph_extra", g_only)) if items]
    status = "match" if not kinds else (kinds[0] if len(kinds) == 1 else "mixed")
    return status, matched, mism, s_only, g_only, ignored


def stratum_size_oracle(n, rate):
    """``max(1, floor(rate * n))`` in exact decimal arithmetic; ``rate`` as written, e.g. "0.1"."""
    from fractions import Fraction
    if n == 0:
        return 0
    return max(1, (Fraction(str(rate)) * n) // 1)
