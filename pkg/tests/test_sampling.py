import numpy as np
import pytest

from l1cube import (
    CHUNK_PAIRS,
    Point,
    SampleSpec,
    derive_seed,
    derive_stream,
    generate_point,
    manhattan_distance,
    sample_distances,
)


class TestDeriveSeed:
    def test_deterministic(self):
        assert derive_seed(42, 7) == derive_seed(42, 7)

    def test_unsigned_64_bit(self):
        for seed, key in [(0, 0), (2**64 - 1, 2**64 - 1), (5, 123456789)]:
            assert 0 <= derive_seed(seed, key) < 2**64

    def test_distinct_keys_distinct_seeds(self):
        seeds = {derive_seed(0, k) for k in range(200)}
        assert len(seeds) == 200

    def test_distinct_root_seeds_distinct_subseeds(self):
        assert derive_seed(0, 5) != derive_seed(1, 5)

    def test_regression_pins(self):
        # Frozen outputs: changing them silently would re-key every stream
        # and break reproducibility of previously recorded runs.
        assert derive_seed(0, 0) == 12035550249420947055
        assert derive_seed(0, 1) == 6791897765849424158
        assert derive_seed(1, 0) == 627405149472732430
        assert derive_seed(12345, 100) == 13466883139077322134


class TestSampleSpec:
    def test_fields(self):
        spec = SampleSpec(dim=3, num_pairs=10, seed=99)
        assert (spec.dim, spec.num_pairs, spec.seed) == (3, 10, 99)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(dim=0, num_pairs=1, seed=0),
            dict(dim=1, num_pairs=0, seed=0),
            dict(dim=1, num_pairs=1, seed=-1),
            dict(dim=1, num_pairs=1, seed=2**64),
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            SampleSpec(**kwargs)


class TestStreams:
    def test_same_key_same_sequence(self):
        a = derive_stream(7, 3).generator.random(32)
        b = derive_stream(7, 3).generator.random(32)
        assert np.array_equal(a, b)

    def test_distinct_stream_ids_differ(self):
        a = derive_stream(7, 0).generator.random(32)
        b = derive_stream(7, 1).generator.random(32)
        assert not np.array_equal(a, b)

    def test_negative_stream_id_rejected(self):
        with pytest.raises(ValueError, match="stream_id"):
            derive_stream(7, -1)

    def test_generate_point_shape_and_range(self):
        stream = derive_stream(11, 0)
        p = generate_point(stream, 6)
        assert isinstance(p, Point)
        assert p.dim == 6
        assert np.all((p.coords >= 0.0) & (p.coords < 1.0))

    def test_generate_point_consumes_exactly_dim_draws(self):
        seq = derive_stream(11, 0)
        p = generate_point(seq, 4)
        q = generate_point(seq, 4)
        flat = derive_stream(11, 0).generator.random(8)
        assert np.array_equal(np.concatenate([p.coords, q.coords]), flat)

    def test_generate_point_rejects_bad_dim(self):
        with pytest.raises(ValueError):
            generate_point(derive_stream(11, 0), 0)


class TestSampleDistances:
    def test_deterministic(self):
        spec = SampleSpec(dim=4, num_pairs=300, seed=21)
        assert np.array_equal(sample_distances(spec), sample_distances(spec))

    def test_shape_and_bounds(self):
        spec = SampleSpec(dim=4, num_pairs=300, seed=21)
        d = sample_distances(spec)
        assert d.shape == (300,)
        assert np.all((d >= 0.0) & (d <= 4.0))

    def test_matches_pointwise_generation(self):
        # Within one chunk, distance j must equal the distance of the j-th
        # (P, Q) pair drawn sequentially from the chunk's own substream.
        spec = SampleSpec(dim=3, num_pairs=5, seed=77)
        stream = derive_stream(77, 0)
        expected = []
        for _ in range(5):
            p = generate_point(stream, 3)
            q = generate_point(stream, 3)
            expected.append(manhattan_distance(p, q))
        assert np.array_equal(sample_distances(spec), expected)

    def test_chunks_are_prefix_stable(self):
        # Chunk c always draws from substream c, so a longer run extends a
        # shorter one rather than reshuffling it.
        short = sample_distances(SampleSpec(dim=2, num_pairs=CHUNK_PAIRS, seed=5))
        long = sample_distances(SampleSpec(dim=2, num_pairs=CHUNK_PAIRS + 500, seed=5))
        assert np.array_equal(long[:CHUNK_PAIRS], short)

    def test_worker_count_invariance(self):
        spec = SampleSpec(dim=3, num_pairs=5000, seed=13)
        base = sample_distances(spec, workers=1)
        for workers in (2, 8):
            assert np.array_equal(base, sample_distances(spec, workers=workers))

    def test_single_pair(self):
        d = sample_distances(SampleSpec(dim=1, num_pairs=1, seed=0))
        assert d.shape == (1,)

    def test_sample_mean_near_theory(self):
        # 20000 pairs at dim 4: mean n/3 with SE sqrt((n/18)/N); 5 SE gate.
        spec = SampleSpec(dim=4, num_pairs=20000, seed=3)
        d = sample_distances(spec)
        se = np.sqrt((4 / 18) / 20000)
        assert abs(d.mean() - 4 / 3) < 5 * se
