import json

import numpy as np

import tau2


def main():
    cfg = tau2.gen_config(11, 3, 1)
    assert cfg.p == 3 and cfg.N == 1 and cfg.qdim() == 3

    js = cfg.to_json()
    cfg2 = tau2.ModelConfig.from_json(js)
    assert cfg2.to_json() == js
    assert cfg2.digest() == cfg.digest()

    t1 = tau2.transfer(cfg, 0.31 + 0.07j)
    t2 = tau2.transfer(cfg, -0.11 + 0.21j)
    assert t1.shape == (3, 3)
    comm = np.linalg.norm(t1 @ t2 - t2 @ t1)
    assert comm < 1e-10 * np.linalg.norm(t1) * np.linalg.norm(t2)

    # fused hierarchy step reproduced through the bindings
    eta = cfg.eta()
    u = 0.26 + 0.31j
    lhs = tau2.transfer(cfg, u) @ tau2.transfer(cfg, u - eta)
    rhs = tau2.fused_transfer(2, cfg, u - 0.5 * eta) + tau2.delta(u, cfg) * np.eye(3)
    assert np.linalg.norm(lhs - rhs) < 1e-8 * np.linalg.norm(lhs)

    av = tau2.avg_monodromy(cfg, 0.2 + 0.1j)
    assert av.shape == (2, 2)

    roots, tq_res, bae_res, ok = tau2.bethe_roots(cfg, 0)
    assert ok and len(roots) == 8
    assert tq_res < 1e-6 and bae_res < 1e-6

    rep = json.loads(tau2.run_report(cfg, level="algebra"))
    assert rep["all_pass"] is True
    assert all(c["pass"] for c in rep["checks"])

    csv = tau2.spectrum_csv(cfg)
    assert csv.startswith("index,re_d")
    csv_tq = tau2.tq_csv(cfg)
    assert "root1_re" in csv_tq and "# in_regime" in csv_tq

    print("python smoke ok:", len(rep["checks"]), "checks,", len(roots), "roots")


if __name__ == "__main__":
    main()
