import math

import numpy as np
import pytest

from tactilebench.errors import EmptyOverlapError, TooShortError, ZeroVarianceWarning
from tactilebench.pipeline import (
    SensorStream,
    Standardizer,
    align_streams,
    build_windows,
    load_stream_jsonl,
    load_windows_csv,
    rolling_folds,
    save_stream_jsonl,
    save_windows_csv,
    simulate_streams,
    standardize,
)
from tactilebench.world import ObjectSpec, external_rotation_profile

CYL = ObjectSpec("cylinder", (0.065, 0.12))


def brute_force_align(cam, press, marg):
    """Independent nearest-timestamp / interval search, plain loops."""
    gap = float(np.median(np.diff(cam.times))) if len(cam) > 1 else math.inf
    out = []
    for i, t_i in enumerate(cam.times):
        t_next = cam.times[i + 1] if i + 1 < len(cam.times) else t_i + gap
        members = []
        for j, t_p in enumerate(press.times):
            if t_i <= t_p < t_next:
                best = min(
                    range(len(marg.times)),
                    key=lambda k: (abs(marg.times[k] - t_p), marg.times[k]),
                )
                members.append((j, best))
        out.append(members)
    return out


def random_triple(rng):
    def stream(channel, n, lo, hi, d):
        times = np.sort(rng.uniform(lo, hi, size=n))
        times += np.arange(n) * 1e-9  # enforce strictly increasing
        return SensorStream(channel, times, rng.normal(size=(n, d)), n / (hi - lo))

    cam = stream("camera_angle", rng.integers(2, 8), 0.0, 1.0, 1)
    press = stream("pressure", rng.integers(1, 30), -0.2, 1.3, 2)
    marg = stream("marg", rng.integers(1, 60), -0.2, 1.3, 18)
    return cam, press, marg


class TestSimulateStreams:
    def test_camera_count_for_paper_scale_run(self):
        # 29.95 Hz x 30 s with +/-2% period jitter: the count stays within
        # one sample of 898.5.
        trial = external_rotation_profile(CYL, duration=30.0, seed=0)
        for seed in range(3):
            cam, _, _ = simulate_streams(trial, seed=seed)
            assert 896 <= len(cam) <= 901

    def test_marg_pressure_rate_ratio(self):
        trial = external_rotation_profile(CYL, duration=30.0, seed=1)
        _, press, marg = simulate_streams(trial, seed=1)
        assert len(marg) / len(press) == pytest.approx(973.50 / 402.19, rel=0.02)

    def test_seed_reproducibility(self):
        trial = external_rotation_profile(CYL, duration=5.0, seed=2)
        a = simulate_streams(trial, seed=5)
        b = simulate_streams(trial, seed=5)
        for s1, s2 in zip(a, b):
            assert np.array_equal(s1.times, s2.times)
            assert np.array_equal(s1.values, s2.values)


class TestAlign:
    def test_toy_interval_assignment(self):
        cam = SensorStream("camera_angle", np.array([0.0, 0.100]),
                           np.array([[0.5], [0.6]]), 10.0)
        press = SensorStream("pressure", np.array([-0.002, 0.030, 0.055, 0.098]),
                             np.arange(8.0).reshape(4, 2), 40.0)
        marg = SensorStream("marg", np.linspace(-0.01, 0.12, 14),
                            np.arange(14 * 18.0).reshape(14, 18), 100.0)
        groups = align_streams(cam, press, marg)
        assert [s.t_pressure for s in groups[0].samples] == [0.030, 0.055, 0.098]
        oracle = brute_force_align(cam, press, marg)
        got = [[s.t_pressure for s in g.samples] for g in groups]
        want = [[press.times[j] for j, _ in members] for members in oracle]
        assert got == want

    def test_exact_timestamp_marg_selected(self):
        cam = SensorStream("camera_angle", np.array([0.0, 0.1]),
                           np.zeros((2, 1)), 10.0)
        press = SensorStream("pressure", np.array([0.05]), np.zeros((1, 2)), 10.0)
        marg = SensorStream("marg", np.array([0.01, 0.05, 0.09]),
                            np.arange(3 * 18.0).reshape(3, 18), 30.0)
        groups = align_streams(cam, press, marg)
        assert groups[0].samples[0].t_marg == 0.05

    def test_matches_brute_force_on_random_triples(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            cam, press, marg = random_triple(rng)
            try:
                groups = align_streams(cam, press, marg)
            except EmptyOverlapError:
                members = brute_force_align(cam, press, marg)
                assert sum(len(m) for m in members) == 0
                continue
            oracle = brute_force_align(cam, press, marg)
            got = [[(s.t_pressure, s.t_marg) for s in g.samples] for g in groups]
            want = [
                [(press.times[j], marg.times[k]) for j, k in members]
                for members in oracle
            ]
            assert got == want

    def test_proximity_at_paper_rates(self):
        # MARG within 3 ms of its pressure sample, and the first sample of
        # each frame within 3 ms of the frame timestamp.
        trial = external_rotation_profile(CYL, duration=2.0, seed=3)
        cam, press, marg = simulate_streams(trial, seed=3)
        groups = align_streams(cam, press, marg)
        for g in groups:
            for s in g.samples:
                assert abs(s.t_marg - s.t_pressure) <= 0.003
            if g.samples:
                assert g.samples[0].t_pressure - g.t_frame <= 0.003

    def test_pairs_per_frame_tracks_rate_ratio(self):
        # 402.19 / 29.95 = 13.4 pairs per frame.
        trial = external_rotation_profile(CYL, duration=5.0, seed=4)
        cam, press, marg = simulate_streams(trial, seed=4)
        groups = align_streams(cam, press, marg)
        interior = groups[:-1]
        mean_pairs = np.mean([len(g.samples) for g in interior])
        assert 12.0 <= mean_pairs <= 15.0

    def test_empty_overlap_raises(self):
        cam = SensorStream("camera_angle", np.array([10.0]), np.zeros((1, 1)), 1.0)
        press = SensorStream("pressure", np.array([0.0]), np.zeros((1, 2)), 1.0)
        marg = SensorStream("marg", np.array([0.0]), np.zeros((1, 18)), 1.0)
        with pytest.raises(EmptyOverlapError):
            align_streams(cam, press, marg)


class TestStandardize:
    def test_reference_values(self):
        x = np.array([[1.0], [2.0], [3.0]])
        n, mu, sigma = standardize(x, x)
        assert np.allclose(n.ravel(), [-1.2247, 0.0, 1.2247], atol=1e-4)
        assert mu[0] == 2.0 and sigma[0] == pytest.approx(math.sqrt(2.0 / 3.0))

    def test_constant_feature_warns_and_centers(self):
        x = np.column_stack([np.ones(5), np.arange(5.0)])
        with pytest.warns(ZeroVarianceWarning):
            n, _, sigma = standardize(x, x)
        assert np.all(n[:, 0] == 0.0)
        assert sigma[0] == 1.0

    def test_training_stats_definitional(self):
        rng = np.random.default_rng(5)
        x = rng.normal(loc=3.0, scale=2.5, size=(500, 4))
        n, _, _ = standardize(x, x)
        assert np.all(np.abs(n.mean(axis=0)) < 1e-9)
        assert np.allclose(n.std(axis=0), 1.0, atol=1e-9)

    def test_no_leakage_from_test_rows(self):
        rng = np.random.default_rng(6)
        train = rng.normal(0.0, 1.0, size=(200, 3))
        test = rng.normal(5.0, 2.0, size=(100, 3))
        full = np.vstack([train, test])
        n, mu, _ = standardize(full, train)
        assert np.allclose(mu, train.mean(axis=0))
        # test rows keep their shifted distribution
        assert n[200:].mean() > 1.0

    def test_estimator_api(self):
        rng = np.random.default_rng(7)
        X = rng.normal(2.0, 3.0, size=(50, 4))
        s = Standardizer().fit(X)
        out = s.transform(X)
        assert np.allclose(out.mean(axis=0), 0.0, atol=1e-9)
        assert "mu_" in vars(s) and s.get_params() == {}


class TestWindows:
    def test_w1_one_window_per_sample(self):
        X = np.arange(12.0).reshape(6, 2)
        y = np.arange(6.0)
        ds = build_windows(X, y, 1)
        assert len(ds) == 6
        assert np.array_equal(ds.targets, y)

    def test_count_formula(self):
        X = np.arange(20.0).reshape(10, 2)
        ds = build_windows(X, np.arange(10.0), 5)
        assert len(ds) == 6

    def test_window_contents_ordered(self):
        X = np.arange(10.0).reshape(10, 1)
        ds = build_windows(X, np.arange(10.0), 4)
        for i in range(len(ds)):
            target_idx = i + 3
            assert ds.targets[i] == target_idx
            assert np.array_equal(ds.windows[i].ravel(),
                                  np.arange(target_idx - 3, target_idx + 1))

    def test_too_short(self):
        with pytest.raises(TooShortError):
            build_windows(np.zeros((3, 2)), np.zeros(3), 5)

    def test_pure_function(self):
        rng = np.random.default_rng(8)
        X = rng.normal(size=(30, 3))
        y = rng.normal(size=30)
        ds1 = build_windows(X, y, 7)
        perm = rng.permutation(30)
        X2, y2 = X[perm], y[perm]
        inv = np.argsort(perm)
        ds2 = build_windows(X2[inv], y2[inv], 7)
        assert np.array_equal(ds1.windows, ds2.windows)
        assert np.array_equal(ds1.targets, ds2.targets)


class TestRollingFolds:
    def test_equal_folds(self):
        fs = rolling_folds(100, 4)
        assert [len(f) for f in fs.folds] == [25, 25, 25, 25]
        train, val = fs.splits[0]
        assert len(train) == 25 and len(val) == 25

    def test_validation_always_later(self):
        fs = rolling_folds(103, 4)
        for train, val in fs.splits:
            assert val.min() > train.max()

    def test_validation_union_covers_folds_2_to_k(self):
        fs = rolling_folds(50, 5)
        seen = np.concatenate([val for _, val in fs.splits])
        expected = np.concatenate(fs.folds[1:])
        assert np.array_equal(np.sort(seen), np.sort(expected))
        assert len(np.unique(seen)) == len(seen)

    def test_no_index_in_two_folds(self):
        fs = rolling_folds(37, 4)
        allidx = np.concatenate(fs.folds)
        assert len(np.unique(allidx)) == 37


class TestIo:
    def test_stream_jsonl_roundtrip(self, tmp_path):
        trial = external_rotation_profile(CYL, duration=1.0, seed=9)
        cam, _, _ = simulate_streams(trial, seed=9)
        path = tmp_path / "cam.jsonl"
        save_stream_jsonl(cam, path, header={"config_hash": "abc"})
        loaded, header = load_stream_jsonl(path)
        assert header == {"config_hash": "abc"}
        assert np.array_equal(loaded.times, cam.times)
        assert np.array_equal(loaded.values, cam.values)

    def test_windows_csv_roundtrip(self, tmp_path):
        rng = np.random.default_rng(10)
        ds = build_windows(rng.normal(size=(12, 3)), rng.normal(size=12), 4)
        path = tmp_path / "w.csv"
        save_windows_csv(ds, path, comment="config_hash=xyz")
        loaded = load_windows_csv(path, window_size=4)
        assert np.array_equal(loaded.windows, ds.windows)
        assert np.array_equal(loaded.targets, ds.targets)
