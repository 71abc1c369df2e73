//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::path::PathBuf;
use std::process::ExitCode;

use serde_json::Value;
use vircalc_cli::{diff_values, load_config, run_suite, Report, RunOptions, Status};

fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(name: &str, jobs: usize) -> Report {
    let (config, text) = load_config(&config_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    run_suite(&config, &text, &RunOptions { jobs: Some(jobs), ..RunOptions::default() }).unwrap_or_else(|e| panic!("{name}: {e}"))
}

struct Reports {
    generic: Report,
    concrete: Report,
}

impl Reports {
    fn find(&self, name: &str) -> Option<&vircalc_cli::CheckRecord> {
        self.generic.checks.iter().chain(&self.concrete.checks).find(|c| c.name == name)
    }

    /// Every named check exists and passed; otherwise the offending names.
    fn passed(&self, names: &[&str]) -> Result<(), String> {
        let bad: Vec<String> = names
            .iter()
            .filter_map(|n| match self.find(n) {
                Some(c) if c.status == Status::Pass => None,
                Some(c) => Some(format!("{n}: {}", c.status.as_str())),
                None => Some(format!("{n}: missing")),
            })
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad.join(", "))
        }
    }

    fn data(&self, name: &str) -> &Value {
        &self.find(name).expect("check exists").data
    }

    fn prefixed(&self, prefix: &str) -> Vec<&str> {
        self.generic.checks.iter().chain(&self.concrete.checks).map(|c| c.name.as_str()).filter(|n| n.starts_with(prefix)).collect()
    }
}

type Criterion = fn(&Reports) -> Result<(), String>;

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn criterion_1(r: &Reports) -> Result<(), String> {
    r.passed(&["bracket-omega", "bracket-omega-lz", "bracket-verma", "bracket-whittaker"])?;
    ensure(r.data("bracket-omega")["checked"] == 25 * 55, "Ω grid is not a,b ≤ 4 with i < j in [-5, 5]")
}

fn criterion_2(r: &Reports) -> Result<(), String> {
    r.passed(&["omega-vanishing"])?;
    let cf = &r.data("omega-vanishing")["closed_form"];
    // 16 monomials × 25 pairs, each for r = 4, 5, 6
    ensure(cf["checked"] == 16 * 25 * 3, "grid size differs from a,b ≤ 3, l,m ∈ [-2,2]")
}

fn criterion_3(r: &Reports) -> Result<(), String> {
    r.passed(&["identity-binomial"])?;
    let b = &r.data("identity-binomial")["binomial"];
    ensure(b["r_max"] == 10 && b["factorial_r_max"] == 6, "ranges differ from r ≤ 10 and r! for r ≤ 6")?;
    // independent route: integer arithmetic on i64
    let binom = |n: i64, k: i64| (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1));
    for r in 0..=10i64 {
        for j in 0..=r.min(6) {
            let sum: i64 = (0..=r).map(|i| (-1i64).pow((r - i) as u32) * binom(r, i) * i.pow(j as u32)).sum();
            let want = if j < r { 0 } else { (1..=r).product() };
            ensure(sum == want, &format!("direct sum wrong at r = {r}, j = {j}"))?;
        }
    }
    Ok(())
}

fn criterion_4(r: &Reports) -> Result<(), String> {
    r.passed(&["identity-gn"])?;
    let g = &r.data("identity-gn")["gn"];
    ensure(g["report"]["n_max"] == 12, "n_max is not 12")?;
    ensure(g["delta_eta"].is_array(), "Δη is not symbolic")?;
    ensure(g["zero_shift_monomial"] == true, "Δη = 0 does not give x^n")?;
    ensure(g["inverse"] == true, "±Δη families are not inverse")
}

fn criterion_5(r: &Reports) -> Result<(), String> {
    r.passed(&["iso-generic", "iso-1", "iso-2", "iso-3", "iso-4", "iso-5", "iso-violated"])?;
    for name in ["iso-generic", "iso-1"] {
        let d = r.data(name);
        ensure(d["i_max"] == 4 && d["n_max"] == 4 && d["m_window"] == serde_json::json!([-3, 3]), "windows differ")?;
    }
    let bad = r.data("iso-violated");
    ensure(bad["criterion_holds"] == false && bad["failure_count"].as_u64() > Some(0), "no recorded intertwining failure")
}

fn criterion_6(r: &Reports) -> Result<(), String> {
    r.passed(&["extract-verma", "extract-whittaker"])?;
    for name in ["extract-verma", "extract-whittaker"] {
        let seeds = r.data(name)["seeds"].as_array().unwrap();
        let degrees: Vec<u64> = seeds.iter().map(|s| s["r"].as_u64().unwrap()).collect();
        ensure(degrees == [0, 1, 2], "seeds do not cover r = 0, 1, 2")?;
        for s in seeds {
            ensure(s["j0_is_s_times_w"] == true, "j = 0 is not s·w")?;
            ensure(s["top_is_minus_alpha_F_of_a_r"] == true, "top coefficient is not −αF(a_r) ⊗ v_r")?;
        }
    }
    Ok(())
}

fn criterion_7(r: &Reports) -> Result<(), String> {
    let names = [
        "signature-omega-1",
        "signature-omega-2",
        "signature-omega-lz-1",
        "signature-omega-lz-2",
        "signature-tensor-1",
        "signature-tensor-2",
        "signature-pair-1",
        "signature-pair-2",
    ];
    r.passed(&names)?;
    for n in ["signature-omega-1", "signature-omega-2", "signature-tensor-1", "signature-tensor-2"] {
        ensure(r.data(n)["first_vanishing"] == 5, &format!("{n}: first vanishing is not 5"))?;
    }
    for n in ["signature-omega-lz-1", "signature-omega-lz-2"] {
        ensure(r.data(n)["first_vanishing"] == 3, &format!("{n}: first vanishing is not 3"))?;
    }
    for n in ["signature-pair-1", "signature-pair-2"] {
        let d = r.data(n);
        ensure(d["first_vanishing"].is_null(), &format!("{n}: vanishes"))?;
        let five = d["pair_coefficients"].as_array().unwrap().iter().find(|x| x["r"] == 5).unwrap();
        ensure(five["all_agree"] == true && five["nonzero_rows"].as_u64() > Some(0), "(μ_2−μ_1)^5 coefficient")?;
    }
    Ok(())
}

fn criterion_8(r: &Reports) -> Result<(), String> {
    r.passed(&["induced-n1", "induced-n2"])?;
    for n in ["induced-n1", "induced-n2"] {
        let d = r.data(n);
        ensure(d["verma_level_dimensions"].as_array().map(Vec::len) == Some(9), "Verma levels not up to 8")?;
        ensure(d["triangular"] == true && d["rank"] == d["tags"], "map is not triangular of full rank")?;
    }
    Ok(())
}

fn criterion_9(r: &Reports) -> Result<(), String> {
    let probes = r.prefixed("probe-");
    r.passed(&probes)?;
    let fills = ["probe-omega-1", "probe-omega-2", "probe-omega-3", "probe-tensor-1", "probe-tensor-2", "probe-tensor-3"];
    for n in fills {
        ensure(r.data(n)["filled"] == true, &format!("{n} did not fill"))?;
    }
    for n in ["probe-omega-alpha0", "probe-omega-hconst", "probe-omega-hquad", "probe-tensor-alpha0", "probe-b-alpha0", "probe-b-hconst", "probe-b-hquad"] {
        let witnesses = r.data(n)["witnesses"].as_array().unwrap();
        ensure(!witnesses.is_empty(), &format!("{n}: no witness"))?;
        for w in witnesses {
            ensure(w["stable"] == true && w["generated_equals"] == true, &format!("{n}: witness not confirmed"))?;
        }
    }
    Ok(())
}

fn same(a: &Report, b: &Report) -> Result<(), String> {
    let diffs = diff_values(&serde_json::to_value(a).unwrap(), &serde_json::to_value(b).unwrap());
    if diffs.is_empty() {
        Ok(())
    } else {
        Err(diffs.into_iter().take(5).collect::<Vec<_>>().join("; "))
    }
}

fn criterion_10(r: &Reports) -> Result<(), String> {
    for (name, first) in [("generic.json", &r.generic), ("concrete.json", &r.concrete)] {
        let again = run(name, 8);
        same(first, &again)?;
        let serial = run(name, 1);
        same(first, &serial)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let reports = Reports { generic: run("generic.json", 8), concrete: run("concrete.json", 8) };
    let criteria: [(&str, Criterion); 10] = [
        ("bracket suite", criterion_1),
        ("ω^(5), ω^(6) vanish and ω^(4) closed form", criterion_2),
        ("binomial identity", criterion_3),
        ("g_n identities", criterion_4),
        ("isomorphism φ", criterion_5),
        ("m^j coefficient extraction", criterion_6),
        ("ω-signature separation", criterion_7),
        ("Whittaker, Verma and induced modules", criterion_8),
        ("irreducibility probes", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check(&reports) {
            Ok(()) => println!("criterion {} ({title}): PASS", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({title}): FAIL: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
