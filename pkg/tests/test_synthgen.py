import numpy as np
import pytest

from metanet import synthgen
from metanet.graph import block_stats


def fresh_rng(seed=0):
    return np.random.default_rng(np.random.SeedSequence(seed))


class TestTwoBlock:
    def test_epsilon_zero_no_cross_edges(self):
        cfg = synthgen.SynthConfig(n_nodes=300, epsilon=0.0, mean_degree=8.0)
        g, truth = synthgen.gen_two_block(cfg, fresh_rng(1))
        t = truth.assignment
        assert all(t[u] == t[v] for u, v in g.edges)

    def test_epsilon_one_uniform_density(self):
        cfg = synthgen.SynthConfig(n_nodes=400, epsilon=1.0, mean_degree=10.0)
        g, truth = synthgen.gen_two_block(cfg, fresh_rng(2))
        st = block_stats(g, truth)
        w = cfg.omega_within()
        for r in range(2):
            for s in range(2):
                pairs = st.n[r] * st.n[s] - (st.n[r] if r == s else 0)
                got = st.m[r, s] / pairs
                sigma = np.sqrt(w * (1 - w) / pairs) * 2  # two trials per pair
                assert abs(got - w) < 3.5 * sigma

    def test_mean_degree_concentration(self):
        cfg = synthgen.SynthConfig(n_nodes=1000, epsilon=0.5, mean_degree=10.0)
        means = []
        for s in range(50):
            g, _ = synthgen.gen_two_block(cfg, fresh_rng(s))
            means.append(g.degree.mean())
        assert abs(np.mean(means) - 10.0) / 10.0 < 0.05

    def test_infeasible_omega(self):
        cfg = synthgen.SynthConfig(n_nodes=10, epsilon=0.0, mean_degree=9.0)
        with pytest.raises(ValueError, match="infeasible"):
            synthgen.gen_two_block(cfg, fresh_rng(0))

    def test_deterministic_given_seed(self):
        cfg = synthgen.SynthConfig(n_nodes=200, epsilon=0.3, mean_degree=6.0)
        g1, t1 = synthgen.gen_two_block(cfg, fresh_rng(9))
        g2, t2 = synthgen.gen_two_block(cfg, fresh_rng(9))
        assert g1 == g2
        assert np.array_equal(t1.assignment, t2.assignment)


class TestCorruptMetadata:
    def test_ell_one_copies_truth(self):
        cfg = synthgen.SynthConfig(n_nodes=200, epsilon=0.2)
        g, truth = synthgen.gen_two_block(cfg, fresh_rng(3))
        meta = synthgen.corrupt_metadata(truth, 1.0, fresh_rng(4))
        assert np.array_equal(meta.assignment, truth.assignment)

    @pytest.mark.parametrize("ell,expected", [(0.0, 0.5), (0.6, 0.8)])
    def test_agreement_rate(self, ell, expected):
        cfg = synthgen.SynthConfig(n_nodes=1000, epsilon=0.2)
        g, truth = synthgen.gen_two_block(cfg, fresh_rng(5))
        rng = fresh_rng(6)
        rates = []
        for _ in range(30):
            meta = synthgen.corrupt_metadata(truth, ell, rng)
            # group-id compaction may rename labels; align before comparing
            agree = (meta.assignment == truth.assignment).mean()
            rates.append(max(agree, 1 - agree))
        sigma = np.sqrt(expected * (1 - expected) / (1000 * 30))
        assert abs(np.mean(rates) - expected) < 4 * sigma + 0.01

    def test_requires_two_groups(self):
        from metanet.graph import Partition
        with pytest.raises(ValueError, match="two-block"):
            synthgen.corrupt_metadata(Partition.from_assignment([0, 0, 0]), 0.5,
                                      fresh_rng(0))


class TestMultiOptimum:
    def test_block_densities_within_3sigma(self):
        cfg = synthgen.default_multi_optimum_config()
        rng = fresh_rng(11)
        g, meta, planted = synthgen.gen_multi_optimum(
            cfg.k_communities, cfg.sizes, cfg.omega, rng,
            cfg.metadata_groups, cfg.planted_groups)
        block = np.repeat(np.arange(len(cfg.sizes)), cfg.sizes)
        from metanet.graph import Partition
        st = block_stats(g, Partition.from_assignment(block))
        for r in range(8):
            for s in range(r, 8):
                pairs = (cfg.sizes[r] * (cfg.sizes[r] - 1) / 2 if r == s
                         else cfg.sizes[r] * cfg.sizes[s])
                got = (st.m[r, s] / 2 if r == s else st.m[r, s])
                w = cfg.omega[r, s]
                sigma = np.sqrt(pairs * w * (1 - w))
                assert abs(got - pairs * w) < 3.5 * sigma + 3

    def test_partition_shapes(self):
        rng = fresh_rng(12)
        g, meta, planted = synthgen.gen_multi_optimum_default(rng)
        assert g.n_nodes == 200
        assert meta.k_groups == 4
        assert planted.k_groups == 4
        assert sorted(np.bincount(meta.assignment).tolist()) == [25, 25, 50, 100]
        assert np.bincount(planted.assignment).tolist() == [50, 50, 50, 50]

    def test_both_partitions_relevant(self):
        from metanet.bestest import run_bestest
        rng = fresh_rng(13)
        g, meta, planted = synthgen.gen_multi_optimum_default(rng)
        for part in (meta, planted):
            res = run_bestest(g, part, model="sbm", n_perm=499, seed=17)
            assert res.p_value < 0.01

    def test_bad_inputs(self):
        rng = fresh_rng(0)
        with pytest.raises(ValueError, match="2K"):
            synthgen.gen_multi_optimum(4, [10] * 7, np.eye(8) * 0.1, rng)
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            synthgen.gen_multi_optimum(4, [10] * 8, np.full((8, 8), 1.2), rng)
