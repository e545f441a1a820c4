use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mobility_core::analogy::{assemble_admittance, read_netlist};
use mobility_core::model::HarmonicRoadExcitation;
use mobility_core::oracle::closed_form_velocity_phasors;
use mobility_core::{build_three_axle, Excitation};
use tempfile::TempDir;

const TRUCK: &str = include_str!("../configs/three_axle_truck.conf");

fn truck_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/three_axle_truck.conf")
}

fn mobility(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mobility")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const TWO_DOF: &str = "[model]\nkind = two_dof\nm1 = 40\nm2 = 250\nk1 = 180000\nk2 = 16000\nd1 = 100\nd2 = 1200\n\
                       F = 800\nphi = 0.4\n[excitation]\nomega = 21\n";

/// `(label, re, im, rms, phase)` rows of the solve table.
fn solve_rows(text: &str) -> Vec<(String, [f64; 4])> {
    text.lines()
        .skip(2)
        .take_while(|l| !l.is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            let n: Vec<f64> = f[1..5].iter().map(|x| x.parse().unwrap()).collect();
            (f[0].to_string(), [n[0], n[1], n[2], n[3]])
        })
        .collect()
}

#[test]
fn solve_truck() {
    let out = mobility(&["solve", truck_path().to_str().unwrap()]);
    assert!(out.status.success());
    let rows = solve_rows(&stdout(&out));
    let expected = [
        ("a", 0.0754, 0.5293, 0.5346, 81.90),
        ("b", -0.0987, 0.0033, 0.0988, 178.11),
        ("d", -0.8114, -2.1287, 2.2781, -110.87),
        ("t", 1.7945, -1.4511, 2.3078, -38.96),
        ("m", -2.1784, -0.9272, 2.3675, -156.94),
    ];
    assert_eq!(rows.len(), 6);
    for ((label, got), (name, re, im, rms, ph)) in rows.iter().zip(expected) {
        assert_eq!(label, name);
        assert!((got[0] - re).abs() < 1e-3 && (got[1] - im).abs() < 1e-3, "{label}");
        assert!((got[2] - rms).abs() < 1e-3 && (got[3] - ph).abs() < 0.05, "{label}");
    }
    assert_eq!(rows[5].0, "c");
    assert!((rows[5].1[2] - 0.133254).abs() < 1e-6);
}

#[test]
fn still_road_gives_zero_table() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "still.conf", &TRUCK.replace("Y = 0.05", "Y = 0"));
    let out = mobility(&["solve", &cfg]);
    assert!(out.status.success());
    for (_, row) in solve_rows(&stdout(&out)) {
        assert_eq!(row[..3], [0.0, 0.0, 0.0]);
    }
}

#[test]
fn branch_currents_close_kcl() {
    let out = mobility(&["solve", truck_path().to_str().unwrap(), "--branch-currents"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("kcl_residual")).unwrap();
    let rel: f64 = line.split("relative ").nth(1).unwrap().trim_end_matches(')').parse().unwrap();
    assert!(rel <= 1e-9);
    assert!(text.contains("K_a_b:a"));
    assert!(text.lines().any(|l| l.starts_with("I_m ")));
}

#[test]
fn translate_pi_round_trips() {
    let dir = TempDir::new().unwrap();
    let truck = truck_path();
    let plain = dir.path().join("plain.net");
    let pi = dir.path().join("pi.net");
    for (args, path) in [(vec!["--norton"], &plain), (vec!["--norton", "--pi"], &pi)] {
        let mut all = vec!["translate", truck.to_str().unwrap(), "-o", path.to_str().unwrap()];
        all.extend(args);
        assert!(mobility(&all).status.success());
    }
    let plain = read_netlist(&std::fs::read_to_string(&plain).unwrap()).unwrap();
    let pi_text = std::fs::read_to_string(&pi).unwrap();
    assert!(!pi_text.lines().any(|l| l.starts_with("KCAP")));
    let pi = read_netlist(&pi_text).unwrap();
    assert_eq!(pi.branch_count("C"), plain.branch_count("C") + 3);

    let w = plain.source_omega;
    let a = assemble_admittance(&plain, w).unwrap();
    let b = assemble_admittance(&pi, w).unwrap();
    let scale = a.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!((&a.matrix - &b.matrix).iter().all(|z| z.norm() <= 1e-12 * scale));
    assert_eq!(a.currents, b.currents);

    // raw form keeps the road sources and reads back to the same text
    let raw = stdout(&mobility(&["translate", truck.to_str().unwrap(), "--pi"]));
    assert!(raw.lines().any(|l| l.starts_with("V V_d ")));
    assert_eq!(mobility_core::analogy::write_netlist(&read_netlist(&raw).unwrap()), raw);
}

#[test]
fn two_dof_netlist_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "two.conf", TWO_DOF);
    let net = read_netlist(&stdout(&mobility(&["translate", &cfg]))).unwrap();
    assert_eq!(net.branches.len(), 7);
    for (code, n) in [("C", 2), ("L", 2), ("G", 2), ("I", 1)] {
        assert_eq!(net.branch_count(code), n, "{code}");
    }
}

#[test]
fn config_errors_exit_2_and_name_the_key() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "bad.conf", &TRUCK.replace("k_sm = 2600000", ""));
    let out = mobility(&["solve", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`k_sm`"));

    let out = mobility(&["solve", "/nonexistent/x.conf"]);
    assert_eq!(out.status.code(), Some(2));
    let out = mobility(&["validate", truck_path().to_str().unwrap(), "--perturb", "k_zz=2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn singular_exit_3() {
    let dir = TempDir::new().unwrap();
    let omega = ((3.0 - 5f64.sqrt()) / 2.0).sqrt();
    let text = format!(
        "[model]\nkind = two_dof\nm1 = 1\nm2 = 1\nk1 = 1\nk2 = 1\nd1 = 0\nd2 = 0\nF = 1\nphi = 0\n[excitation]\nomega = {omega}\n"
    );
    let cfg = write(&dir, "res.conf", &text);
    let out = mobility(&["solve", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular"));
}

#[test]
fn validate_pass_and_fail() {
    let truck = truck_path();
    let out = mobility(&["validate", truck.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.trim_end().ends_with("PASS"));
    assert!(text.lines().any(|l| l.starts_with("c ")));

    let out = mobility(&["validate", truck.to_str().unwrap(), "--perturb", "k_sd=1.1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).trim_end().ends_with("FAIL"));

    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "two.conf", TWO_DOF);
    assert!(mobility(&["validate", &cfg]).status.success());
}

#[test]
fn speed_sweep_shape() {
    let out = mobility(&["sweep", truck_path().to_str().unwrap(), "--speeds", "--from", "10", "--to", "120", "--points", "111"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "omega_rad_s,node,rms,phase_deg,re,im");
    assert_eq!(lines.len(), 1 + 111 * 5);
    let omegas: Vec<f64> = lines[1..].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert!(omegas.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn single_point_sweep_matches_solve() {
    let truck = truck_path();
    let w = TAU_60_2;
    let sweep = stdout(&mobility(&["sweep", truck.to_str().unwrap(), "--from", &w.to_string(), "--to", &w.to_string(), "--points", "1"]));
    let solve = solve_rows(&stdout(&mobility(&["solve", truck.to_str().unwrap()])));
    for (line, (label, row)) in sweep.lines().skip(1).zip(&solve) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[1], label);
        let rms: f64 = f[2].parse().unwrap();
        let re: f64 = f[4].parse().unwrap();
        assert_eq!((rms, re), (row[2], row[0]));
    }
}

const TAU_60_2: f64 = std::f64::consts::TAU * (60.0 / 3.6) / 2.0;

#[test]
fn sprung_resonance_inside_band() {
    let (from, to, points) = (2.0, 40.0, 381);
    let out = mobility(&[
        "sweep",
        truck_path().to_str().unwrap(),
        "--from",
        &from.to_string(),
        "--to",
        &to.to_string(),
        "--points",
        &points.to_string(),
    ]);
    assert!(out.status.success());
    let rms: Vec<f64> = stdout(&out)
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(1) == Some("a"))
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(rms.len(), points);
    let peak = (1..points - 1).find(|&k| rms[k] > rms[k - 1] && rms[k] >= rms[k + 1]);
    let peak = peak.expect("no interior maximum of the sprung node");

    // the same maximum located with the mechanical closed form
    let model = build_three_axle(&truck_params()).unwrap();
    let road = HarmonicRoadExcitation::new(0.05, 2.0, 1.0).unwrap();
    let oracle: Vec<f64> = (0..points)
        .map(|k| {
            let w = from + (to - from) * k as f64 / (points - 1) as f64;
            closed_form_velocity_phasors(&model, &Excitation::Road(road).retuned(w)).unwrap()[0].norm()
        })
        .collect();
    let oracle_peak = (1..points - 1).find(|&k| oracle[k] > oracle[k - 1] && oracle[k] >= oracle[k + 1]).unwrap();
    assert_eq!(peak, oracle_peak);
}

fn truck_params() -> mobility_core::ThreeAxleParams {
    mobility_core::ThreeAxleParams {
        half_car: mobility_core::HalfCarParams {
            m: 22000.0,
            i_g: 21000.0,
            m_ssd: 900.0,
            m_sst: 1400.0,
            k_sd: 610_000.0,
            k_st: 2_600_000.0,
            d_sd: 15400.0,
            d_st: 15400.0,
            k_rd: 1_360_000.0,
            k_rt: 5_430_000.0,
            d_rd: 150.0,
            d_rt: 150.0,
            l_d: 4.44,
            l_t: 1.71,
            g: 9.81,
        },
        m_ssm: 1400.0,
        k_sm: 2_600_000.0,
        d_sm: 15400.0,
        k_rm: 5_430_000.0,
        d_rm: 150.0,
        l_a: 4.80,
        l_b: 1.35,
    }
}

#[test]
fn timeseries_footer_and_bounds() {
    let out = mobility(&["timeseries", truck_path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t_s,a,b,d,t,m,c");
    assert_eq!(lines.len(), 1 + 1024 + 1);
    let footer: Vec<f64> = lines[1025].split(',').skip(1).map(|x| x.parse().unwrap()).collect();
    let expected = [0.5346, 0.0988, 2.2781, 2.3078, 2.3675, 0.1333];
    for (got, want) in footer.iter().zip(expected) {
        assert!((got - want).abs() < 1e-4, "{got} vs {want}");
    }

    let dt_expected = 10.0 * std::f64::consts::TAU / TAU_60_2 / 1024.0;
    let times: Vec<f64> = lines[1..1025].iter().map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    for (k, t) in times.iter().enumerate() {
        assert!((t - k as f64 * dt_expected).abs() <= 5e-6 * t.max(1e-3));
    }
    for line in &lines[1..1025] {
        for (v, rms) in line.split(',').skip(1).zip(&footer) {
            let v: f64 = v.parse().unwrap();
            // the printed rms carries six significant digits
            assert!(v.abs() <= 2f64.sqrt() * rms * (1.0 + 1e-5) + 1e-9);
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    let truck = truck_path();
    for cmd in ["solve", "translate", "timeseries"] {
        let a = mobility(&[cmd, truck.to_str().unwrap()]);
        let b = mobility(&[cmd, truck.to_str().unwrap()]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn canonical_config_round_trips() {
    let dir = TempDir::new().unwrap();
    let once = stdout(&mobility(&["config", truck_path().to_str().unwrap()]));
    let path = write(&dir, "canon.conf", &once);
    let twice = stdout(&mobility(&["config", &path]));
    assert_eq!(once, twice);
    assert_eq!(
        stdout(&mobility(&["solve", &path])),
        stdout(&mobility(&["solve", truck_path().to_str().unwrap()]))
    );
}

#[test]
fn output_paths_from_config() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("series.csv");
    let text = format!("{TRUCK}\n[output]\ntimeseries = {}\n", target.display());
    let cfg = write(&dir, "out.conf", &text);
    let out = mobility(&["timeseries", &cfg]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&target).unwrap().starts_with("t_s,"));
}
