"""Command-line front end: dispatches subcommands, loads run configuration
(flags override config-file values), and emits deterministic CSV/JSON
artifacts for every table and figure.

Exit codes: 0 success, 1 bad configuration, 2 numerical non-convergence,
3 physical-regime violation (the report is still written).
"""

import math
import os
import sys

import click
import numpy as np

from . import fidelity as fid
from . import homogeneous as hom
from . import io as dio
from . import lifetime as lt
from . import rotor
from . import trapped as tr
from .errors import ConfigError, ConvergenceError, RegimeViolation
from .scales import MoleculeParams, derive_scales


def _parse_state(text):
    try:
        n, m = (int(p) for p in text.split(","))
    except ValueError:
        raise ConfigError(f"state must be 'N,M' integers, got {text!r}")
    return (n, m)


def _parse_floats(text):
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}")


def _cfg(ctx):
    return ctx.obj.get("config", {})


def _pick(flag, cfg, section, key, cast, default):
    """Flag value wins; else config file; else built-in default."""
    if flag is not None:
        return flag
    return dio.config_get(cfg, section, key, cast, default)


def _molecule(ctx, mu0=None, b_ghz=None, mass=None, gamma_sr_mhz=None):
    cfg = _cfg(ctx)
    mu0 = _pick(mu0, cfg, "molecule", "mu0_debye", float, 4.3)
    b_ghz = _pick(b_ghz, cfg, "molecule", "B_GHz", float, 2.8)
    mass = _pick(mass, cfg, "molecule", "mass_amu", float, 120.0)
    gsr = _pick(gamma_sr_mhz, cfg, "molecule", "gamma_sr_MHz", float, 0.0)
    return MoleculeParams(mu0=mu0, B=b_ghz * 1e9, mass=mass, gamma_sr=gsr * 1e6)


def _outpath(ctx, name):
    return dio.resolve_outdir(ctx.obj.get("outdir")) / name


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="Structured key-value config file; flags override it.")
@click.option("--outdir", default=None,
              help=f"Output directory (default ${dio.OUTDIR_ENV} or cwd).")
@click.option("--threads", type=int, default=None,
              help="Cap BLAS/OpenMP threads used by dense solvers.")
@click.pass_context
def cli(ctx, config_path, outdir, threads):
    """Spectra, decoherence rates, stability criteria and cavity-transfer
    fidelities of rotational-ensemble qubits in self-assembled dipolar
    crystals."""
    ctx.ensure_object(dict)
    if threads is not None:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                    "MKL_NUM_THREADS"):
            os.environ[var] = str(threads)
    ctx.obj["outdir"] = outdir
    ctx.obj["config"] = dio.load_config(config_path) if config_path else {}


# ---------------------------------------------------------------------------
# rotor

@cli.group("rotor")
def rotor_group():
    """Single-molecule Stark spectra and qubit pair parameters."""


@rotor_group.command("scan")
@click.option("--eb-min", type=float, default=0.0, show_default=True)
@click.option("--eb-max", type=float, default=10.0, show_default=True)
@click.option("--points", type=int, default=None, help="Grid size [101].")
@click.option("--m-max", type=int, default=3, show_default=True,
              help="Largest |M_N| block (levels with N <= m-max+2 are kept).")
@click.option("--nmax", type=int, default=None, help="Basis cutoff.")
@click.option("--spin", is_flag=True,
              help="Scan the spin-1/2 rotor blocks (M_J) instead.")
@click.option("--out", default=None, help="CSV filename.")
@click.pass_context
def rotor_scan(ctx, eb_min, eb_max, points, m_max, nmax, spin, out):
    """Field scan of energies and induced dipoles (bias-field spectroscopy)."""
    cfg = _cfg(ctx)
    mol = _molecule(ctx)
    points = _pick(points, cfg, "numerics", "points", int, 101)
    nmax = _pick(nmax, cfg, "numerics", "N_max", int, None)
    fields = np.linspace(eb_min, eb_max, points)
    rows = []
    if spin:
        if mol.gamma_sr <= 0:
            raise ConfigError("spin scan needs molecule.gamma_sr_MHz > 0")
        for e_b in fields:
            for twice_mj in range(-2 * m_max - 1, 2 * m_max + 2, 2):
                m_j = twice_mj / 2.0
                sol = rotor.solve_spin_rotor(mol, e_b, m_j,
                                             N_max=nmax or 10)
                for i, (n, m_n, m_s) in enumerate(sol.labels):
                    if n <= m_max + 2:
                        rows.append((e_b, m_j, i, n, m_n, m_s,
                                     sol.energies[i]))
        header = ["E_b", "M_J", "index", "N", "M_N", "M_S", "energy_B"]
        default_name = "rotor_scan_spin.csv"
    else:
        for e_b in fields:
            for m_n in range(0, m_max + 1):
                sol = rotor.solve_stark(mol, e_b, m_n, N_max=nmax)
                for n in sol.basis_N:
                    if n <= m_max + 2:
                        i = sol.index_of((int(n), m_n))
                        rows.append((e_b, int(n), m_n, sol.energies[i],
                                     sol.dipoles[i]))
        header = ["E_b", "N", "M_N", "energy_B", "dipole_mu0"]
        default_name = "rotor_scan.csv"
    path = _outpath(ctx, out or default_name)
    dio.write_csv(path, header, rows)
    click.echo(f"wrote {path}")


@rotor_group.command("pair")
@click.option("--g", "g_state", required=True, help="Ground state as N,M.")
@click.option("--e", "e_state", required=True, help="Excited state as N,M.")
@click.option("--eb", type=float, required=True, help="Bias field [B/mu0].")
@click.option("--nmax", type=int, default=None)
@click.option("--out", default="rotor_pair.json")
@click.pass_context
def rotor_pair(ctx, g_state, e_state, eb, nmax, out):
    """Qubit pair parameters (mu_g, mu_e, epsilon, kappa, ...) at one field."""
    mol = _molecule(ctx)
    pair = rotor.qubit_pair_params(mol, _parse_state(g_state),
                                   _parse_state(e_state), eb, N_max=nmax)
    path = _outpath(ctx, out)
    dio.write_json(path, {"pair": pair.__dict__})
    click.echo(f"wrote {path}")


@rotor_group.command("find")
@click.option("--kind", type=click.Choice(["sweet", "magic"]), required=True)
@click.option("--g", "g_state", required=True)
@click.option("--e", "e_state", required=True)
@click.option("--bracket", required=True, help="Field interval 'a,b'.")
@click.option("--out", default="rotor_find.json")
@click.pass_context
def rotor_find(ctx, kind, g_state, e_state, bracket, out):
    """Locate a sweet (epsilon=0) or magic (epsilon+kappa=0) field point."""
    mol = _molecule(ctx)
    lo, hi = _parse_floats(bracket)
    e_b, pair = rotor.find_field_point(mol, _parse_state(g_state),
                                       _parse_state(e_state), kind=kind,
                                       bracket=(lo, hi))
    path = _outpath(ctx, out)
    dio.write_json(path, {"kind": kind, "E_b": e_b, "pair": pair.__dict__})
    click.echo(f"wrote {path}")


# ---------------------------------------------------------------------------
# homogeneous crystal

_K2D = {"Gamma": np.array([0.0, 0.0]),
        "K": np.array([4.0 * math.pi / 3.0, 0.0]),
        "M": np.array([math.pi, math.pi / math.sqrt(3.0)])}


def _path_2d(points):
    """Gamma -> K -> M -> Gamma sampled uniformly in arc length."""
    corners = [_K2D["Gamma"], _K2D["K"], _K2D["M"], _K2D["Gamma"]]
    segs = list(zip(corners[:-1], corners[1:]))
    lengths = [float(np.linalg.norm(b - a)) for a, b in segs]
    total = sum(lengths)
    ks, ss = [], []
    s0 = 0.0
    for (a, b), ell in zip(segs, lengths):
        n = max(2, int(round(points * ell / total)))
        ts = np.linspace(0.0, 1.0, n, endpoint=False)
        for t in ts:
            ks.append(a + t * (b - a))
            ss.append(s0 + t * ell)
        s0 += ell
    ks.append(corners[-1])
    ss.append(total)
    return np.array(ss), np.array(ks)


@cli.command("band")
@click.option("--dim", type=click.Choice(["1", "2"]), default="1",
              show_default=True)
@click.option("--points", type=int, default=None, help="Samples [512].")
@click.option("--kappa", type=float, default=1.0, show_default=True)
@click.option("--epsilon", type=float, default=0.0, show_default=True)
@click.option("--gamma", type=float, default=1.0, show_default=True)
@click.option("--out", default=None)
@click.pass_context
def band_cmd(ctx, dim, points, kappa, epsilon, gamma, out):
    """Exciton band J plus phonon f and coupling g along the BZ.

    1D: columns k, J, f, g, E.  2D: Gamma-K-M-Gamma path with both phonon
    branches."""
    cfg = _cfg(ctx)
    points = _pick(points, cfg, "numerics", "points", int, 512)
    dim = int(dim)
    if dim == 1:
        ks = np.linspace(0.0, math.pi, points)
        j = hom.j_1d(ks)
        f = hom.f_1d(ks)
        g = hom.g_1d(ks)
        rows = [(k, jv, fv, gv, epsilon * hom.J0_1D + kappa * jv)
                for k, jv, fv, gv in zip(ks, j, f, g)]
        header = ["k", "J", "f", "g", "E_kUdd"]
        name = out or "band_1d.csv"
    else:
        ss, ks = _path_2d(points)
        j = hom.j_value(2, ks)
        f, _ = hom.phonon_grid_2d(ks)
        rows = [(s, k[0], k[1], jv, f1, f2)
                for s, k, jv, (f1, f2) in zip(ss, ks, j, f)]
        header = ["s", "kx", "ky", "J", "f1", "f2"]
        name = out or "band_2d.csv"
    path = _outpath(ctx, name)
    dio.write_csv(path, header, rows)
    click.echo(f"wrote {path}")


@cli.command("phonon")
@click.option("--dim", type=click.Choice(["1", "2"]), default="1",
              show_default=True)
@click.option("--points", type=int, default=None)
@click.option("--gamma", type=float, default=1.0, show_default=True)
@click.option("--nu-perp-tilde", type=float, default=None,
              help="Adds transverse branches (1D only).")
@click.option("--out", default=None)
@click.pass_context
def phonon_cmd(ctx, dim, points, gamma, nu_perp_tilde, out):
    """Phonon spectrum omega(q) = f(q)/sqrt(gamma) [U_dd/hbar]."""
    cfg = _cfg(ctx)
    points = _pick(points, cfg, "numerics", "points", int, 512)
    dim = int(dim)
    sqg = math.sqrt(gamma)
    if dim == 1:
        qs = np.linspace(0.0, math.pi, points)
        f = hom.f_1d(qs)
        if nu_perp_tilde is None:
            rows = [(q, fv, fv / sqg) for q, fv in zip(qs, f)]
            header = ["q", "f", "omega"]
        else:
            rows = []
            for q in qs:
                m = hom.transverse_spectrum_hom(q, nu_perp_tilde, gamma)
                fv = float(hom.f_1d(q))
                rows.append((q, fv / sqg, m.omega_y.real, m.omega_y.imag,
                             m.omega_z.real, m.omega_z.imag, m.stable))
            header = ["q", "omega_long", "omega_y_re", "omega_y_im",
                      "omega_z_re", "omega_z_im", "stable"]
        name = out or "phonon_1d.csv"
    else:
        ss, qs = _path_2d(points)
        f, _ = hom.phonon_grid_2d(qs)
        rows = [(s, q[0], q[1], f1, f2, f1 / sqg, f2 / sqg)
                for s, q, (f1, f2) in zip(ss, qs, f)]
        header = ["s", "qx", "qy", "f1", "f2", "omega1", "omega2"]
        name = out or "phonon_2d.csv"
    path = _outpath(ctx, name)
    dio.write_csv(path, header, rows)
    click.echo(f"wrote {path}")


@cli.command("coupling")
@click.option("--dim", type=click.Choice(["1", "2"]), default="1",
              show_default=True)
@click.option("--q", required=True, help="Phonon wavevector (scalar or qx,qy).")
@click.option("--k", default="0", help="Exciton wavevector.")
@click.option("--branch", type=int, default=1, show_default=True)
@click.option("--kappa", type=float, required=True)
@click.option("--epsilon", type=float, required=True)
@click.option("--gamma", type=float, required=True)
@click.option("--n-sites", type=int, default=None,
              help="Crystal size N; omit to keep sqrt(N) symbolic.")
@click.option("--out", default="coupling.json")
@click.pass_context
def coupling_cmd(ctx, dim, q, k, branch, kappa, epsilon, gamma, n_sites, out):
    """Exciton-phonon matrix element M(q, k)."""
    dim = int(dim)
    qv = _parse_floats(q)
    kv = _parse_floats(k)
    if dim == 1:
        qa, ka = qv[0], kv[0]
    else:
        if len(qv) != 2 or len(kv) != 2:
            raise ConfigError("2D wavevectors need two components qx,qy")
        qa, ka = np.array(qv), np.array(kv)
    el = hom.coupling_matrix_hom(dim, qa, ka, branch=branch, kappa=kappa,
                                 epsilon=epsilon, gamma=gamma, N=n_sites)
    payload = {"q": qv, "k": kv, "branch": el.branch, "g_q": el.g_q,
               "M_Udd": {"re": el.M.real, "im": el.M.imag},
               "sqrtN_symbolic": n_sites is None}
    path = _outpath(ctx, out)
    dio.write_json(path, payload)
    click.echo(f"wrote {path}")


@cli.command("lifetime")
@click.option("--dim", type=click.Choice(["1", "2"]), default="1",
              show_default=True)
@click.option("--kappa", type=float, required=True)
@click.option("--epsilon", type=float, required=True)
@click.option("--gamma", type=float, required=True)
@click.option("--tau", type=float, default=0.0, show_default=True)
@click.option("--pc-threshold", type=float, default=lt.P_C_THRESHOLD,
              show_default=True, help="Weak-coupling cut on P_c.")
@click.option("--a0-nm", type=float, default=None,
              help="With --mu-g-debye: attach SI rates to the report.")
@click.option("--mu-g-debye", type=float, default=None)
@click.option("--out", default="lifetime.json")
@click.pass_context
def lifetime_cmd(ctx, dim, kappa, epsilon, gamma, tau, pc_threshold,
                 a0_nm, mu_g_debye, out):
    """Decay classification: W, Golden-Rule Gamma, P_c, regime and T_e."""
    report = lt.classify_and_lifetime(int(dim), kappa, epsilon, gamma, tau,
                                      p_c_threshold=pc_threshold)
    scales = None
    if a0_nm is not None:
        if mu_g_debye is None:
            raise ConfigError("SI output needs both --a0-nm and --mu-g-debye")
        mol = _molecule(ctx)
        scales = derive_scales(mol, mu_g_debye, a0_nm * 1e-9, 0.0, int(dim))
    path = _outpath(ctx, out)
    dio.write_json(path, report.to_dict(scales))
    click.echo(f"wrote {path}")


# ---------------------------------------------------------------------------
# trapped crystal

@cli.group("trap")
def trap_group():
    """Harmonically confined chain: equilibrium, spectra, fluctuations."""


@trap_group.command("solve")
@click.option("--n", "n_mol", type=int, required=True)
@click.option("--out", default=None)
@click.pass_context
def trap_solve(ctx, n_mol, out):
    """Equilibrium positions and the analytic density overlay."""
    crystal = tr.equilibrium_positions(n_mol)
    rows = [(i + 1, x, crystal.density(x))
            for i, x in enumerate(crystal.positions)]
    path = _outpath(ctx, out or f"trap_positions_N{n_mol}.csv")
    dio.write_csv(path, ["i", "x_a0", "density_analytic"], rows)
    click.echo(f"wrote {path}")


@trap_group.command("spectra")
@click.option("--n", "n_mol", type=int, required=True)
@click.option("--what", type=click.Choice(["excitons", "phonons"]),
              required=True)
@click.option("--kappa", type=float, default=1.0, show_default=True)
@click.option("--gamma", type=float, default=30.0, show_default=True)
@click.option("--nu-perp-tilde", type=float, default=1.2, show_default=True)
@click.option("--out", default=None)
@click.pass_context
def trap_spectra(ctx, n_mol, what, kappa, gamma, nu_perp_tilde, out):
    """Exciton or three-branch phonon spectra with analytic overlays."""
    crystal = tr.equilibrium_positions(n_mol)
    if what == "excitons":
        basis = tr.exciton_modes_trapped(crystal, kappa=kappa)
        lw = basis.overlay["long_wavelength"]
        rows = [(n + 1, basis.eigenvalues[n], kappa * lw[n],
                 kappa * basis.overlay["short_wavelength_min"])
                for n in range(n_mol)]
        header = ["n", "E_Udd", "E_lw_overlay", "E_sw_min"]
        name = out or f"trap_excitons_N{n_mol}.csv"
    else:
        lg = tr.phonon_modes_trapped(crystal, "long", gamma=gamma)
        py = tr.phonon_modes_trapped(crystal, "y", gamma=gamma,
                                     nu_perp_tilde=nu_perp_tilde)
        pz = tr.phonon_modes_trapped(crystal, "z", gamma=gamma,
                                     nu_perp_tilde=nu_perp_tilde)
        lw = lg.overlay["long_wavelength"]
        rows = []
        for m in range(n_mol):
            rows.append((m + 1, lg.eigenvalues[m],
                         py.eigenvalues[m].real, py.eigenvalues[m].imag,
                         pz.eigenvalues[m].real, pz.eigenvalues[m].imag,
                         lw[m]))
        header = ["m", "omega_long", "omega_y_re", "omega_y_im",
                  "omega_z_re", "omega_z_im", "omega_long_lw_overlay"]
        name = out or f"trap_phonons_N{n_mol}.csv"
    path = _outpath(ctx, name)
    dio.write_csv(path, header, rows)
    click.echo(f"wrote {path}")


@trap_group.command("lindemann")
@click.option("--n", "n_mol", type=int, required=True)
@click.option("--gamma", type=float, default=100.0, show_default=True)
@click.option("--tau", default="0,1,2,5", show_default=True,
              help="Comma-separated temperatures.")
@click.option("--soundwave", is_flag=True,
              help="Use the sound-wave frequency approximation.")
@click.option("--out", default=None)
@click.pass_context
def trap_lindemann(ctx, n_mol, gamma, tau, soundwave, out):
    """Universal fluctuation profile F(xi, tau) = gamma^{1/4} Gamma_L."""
    crystal = tr.equilibrium_positions(n_mol)
    basis = tr.phonon_modes_trapped(crystal, "long", gamma=gamma)
    rows = []
    for t in _parse_floats(tau):
        prof = tr.lindemann(crystal, gamma, t, use_soundwave=soundwave,
                            phonon_basis=basis)
        for xi, gl, fv in zip(prof.xi, prof.gamma_L, prof.F):
            rows.append((t, xi, gl, fv))
    path = _outpath(ctx, out or f"trap_lindemann_N{n_mol}.csv")
    dio.write_csv(path, ["tau", "xi", "Gamma_L", "F"], rows)
    click.echo(f"wrote {path}")


@cli.command("stability")
@click.option("--gamma", type=float, required=True)
@click.option("--tau", type=float, required=True)
@click.option("--nu-perp-tilde", type=float, required=True)
@click.option("--n", "n_mol", type=int, default=None,
              help="Evaluate the Lindemann profile on an N-molecule chain.")
@click.option("--out", default="stability.json")
@click.pass_context
def stability_cmd(ctx, gamma, tau, nu_perp_tilde, n_mol, out):
    """All crystal stability criteria; exit code 3 if any is violated."""
    crystal = tr.equilibrium_positions(n_mol) if n_mol else None
    rep = tr.stability_report(gamma, tau, nu_perp_tilde, crystal=crystal)
    payload = dict(rep.__dict__)
    payload["lindemann_profile"] = [list(p) for p in rep.lindemann_profile]
    path = _outpath(ctx, out)
    dio.write_json(path, payload)
    click.echo(f"wrote {path}")
    if not (rep.inequality_ok and rep.zigzag_ok and rep.lindemann_ok
            and rep.temperature_ok):
        raise RegimeViolation("stability criteria violated; see report")


@cli.command("fidelity")
@click.option("--n", "n_mol", type=int, default=400, show_default=True,
              help="Chain size for the eigenproblems.")
@click.option("--gamma", type=float, default=12.54, show_default=True)
@click.option("--tau", type=float, default=0.0, show_default=True)
@click.option("--kappa", type=float, default=10.23, show_default=True)
@click.option("--u-khz", type=float, default=215.6, show_default=True,
              help="Dipole-dipole energy U_dd/h.")
@click.option("--g-n-khz", type=float, default=None,
              help="Collective coupling; default from cavity geometry.")
@click.option("--d-um", type=float, default=None)
@click.option("--n-eff", type=float, default=None)
@click.option("--gamma-c-khz", type=float, default=None)
@click.option("--mode", type=click.Choice(["flat", "cosine"]), default=None)
@click.option("--lambda-c-a0", type=float, default=None,
              help="Cavity wavelength in units of a0 (cosine mode).")
@click.option("--out", default="fidelity.json")
@click.pass_context
def fidelity_cmd(ctx, n_mol, gamma, tau, kappa, u_khz, g_n_khz, d_um, n_eff,
                 gamma_c_khz, mode, lambda_c_a0, out):
    """Collective-mode broadening W and optimal-detuning transfer fidelity."""
    cfg = _cfg(ctx)
    d_um = _pick(d_um, cfg, "cavity", "d_um", float, 0.5)
    gamma_c_khz = _pick(gamma_c_khz, cfg, "cavity", "Gamma_c_kHz", float, 10.0)
    mode = _pick(mode, cfg, "cavity", "mode", str, "flat")
    crystal = tr.equilibrium_positions(n_mol)
    if mode == "cosine":
        if lambda_c_a0 is None:
            raise ConfigError("cosine mode needs --lambda-c-a0")
        u = fid.mode_profile(crystal.positions, "cosine", lambda_c=lambda_c_a0)
    else:
        u = None
    broad = fid.inhomogeneous_W(crystal, gamma, tau, u=u)
    w_hz = abs(kappa) * broad.W_dimensionless * u_khz * 1e3
    if g_n_khz is None:
        if n_eff is None:
            raise ConfigError("give --g-n-khz or --n-eff (with --d-um)")
        g_n_hz = fid.collective_coupling_hz(
            fid.single_molecule_coupling_hz(d_um), n_molecules=n_eff)
    else:
        g_n_hz = g_n_khz * 1e3
    res = fid.transfer_fidelity(g_n_hz, gamma_c_khz * 1e3, w_hz)
    payload = {
        "inputs": {"N": n_mol, "gamma": gamma, "tau": tau, "kappa": kappa,
                   "U_dd_kHz": u_khz, "mode": mode},
        "dimensionless": {"I_exc": broad.I_exc, "I_phon": broad.I_phon,
                          "W_over_kappaU": broad.W_dimensionless},
        "si": {"W_Hz": w_hz, "g_N_Hz": g_n_hz,
               "Gamma_c_Hz": gamma_c_khz * 1e3,
               "Delta_opt_Hz": res.delta_opt_hz,
               "fidelity": res.fidelity, "gate_time_s": res.gate_time_s},
    }
    path = _outpath(ctx, out)
    dio.write_json(path, payload)
    click.echo(f"wrote {path}")


@cli.command("case-study")
@click.argument("name", type=click.Choice(["cabr"]))
@click.option("--optimistic", is_flag=True,
              help="Second parameter set: g_N/2pi = 25 MHz, a0 = 100 nm.")
@click.option("--n-crystal", type=int, default=800, show_default=True)
@click.option("--out", default=None)
@click.pass_context
def case_study_cmd(ctx, name, optimistic, n_crystal, out):
    """Worked end-to-end example for a CaBr chain on a stripline cavity."""
    if optimistic:
        cs = fid.case_study_cabr(a0=100e-9, g_N_hz=25e6, n_crystal=n_crystal)
    else:
        cs = fid.case_study_cabr(n_crystal=n_crystal)
    path = _outpath(ctx, out or ("case_study_cabr_optimistic.json"
                                 if optimistic else "case_study_cabr.json"))
    dio.write_json(path, dict(cs.__dict__))
    click.echo(f"wrote {path}")


def main():
    try:
        cli.main(standalone_mode=False)
    except click.exceptions.Abort:
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(1)
    except ConvergenceError as exc:
        click.echo(f"convergence error: {exc}", err=True)
        sys.exit(2)
    except RegimeViolation as exc:
        click.echo(f"regime violation: {exc}", err=True)
        sys.exit(3)
    sys.exit(0)


if __name__ == "__main__":
    main()
