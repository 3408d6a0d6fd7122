use std::collections::BTreeMap;

use hypero::arrangement::{bounded, feasible, gale_dual, require_valid, validate, Arrangement, CategoryODatum};
use hypero::blockalg::{cartan_matrix, hilbert_matrix, quotient_by_unbounded, BlockAlgebra, Flavor, FiniteDimAlgebra};
use hypero::blockalg::{derived_quotient_homology, tor0_stratifying_check};
use hypero::chamber_order::{build_order_tables, predicted_dimensions};
use hypero::dualities::{koszul_corner_check, mirror_dim_check, skeleton_koszul_check};
use hypero::fixtures::random_datum;
use hypero::qpoly::qmat_transpose;
use hypero::repcat::{
    bgg_reciprocity_check, exceptional_collection_check, koszulity_check, quadratic_dual, standard_filtration_check,
    QuadraticData,
};
use hypero::rh::{rh_iso_check, RhDomain};
use hypero::{par, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Command, RunConfig};

pub enum Failure {
    /// Bad input: schema, invalid datum, unsupported dimension. Exit code 2.
    Input(String),
    /// A computation gave up. Exit code 1.
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_) | Error::NotACategoryODatum(_) | Error::DimensionTooHigh(_) | Error::UnknownLabel(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

#[derive(Serialize)]
pub struct Check {
    pub pass: bool,
    pub details: Value,
}

fn check<T: Serialize>(pass: bool, details: &T) -> Check {
    Check { pass, details: serde_json::to_value(details).expect("report serializes") }
}

type Checks = BTreeMap<String, Check>;

#[derive(Default)]
pub struct Outcome {
    pub checks: Checks,
    /// Command-specific table; the check summary is used otherwise.
    pub csv: Option<String>,
    /// Extra files written next to the report when an output directory is given.
    pub attachments: Vec<(String, String)>,
}

impl Outcome {
    fn from_checks(checks: Checks) -> Self {
        Outcome { checks, ..Default::default() }
    }

    pub fn pass(&self) -> bool {
        self.checks.values().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.checks).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        if let Some(csv) = &self.csv {
            return csv.clone();
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check", "pass"]).expect("csv");
        for (name, c) in &self.checks {
            w.write_record([name.as_str(), if c.pass { "true" } else { "false" }]).expect("csv");
        }
        String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
    }
}

pub fn dispatch(cmd: Command, cfg: &RunConfig, d: &CategoryODatum) -> Result<Outcome, Failure> {
    if cmd != Command::Validate {
        require_valid(d)?;
    }
    match cmd {
        Command::Validate => cmd_validate(d),
        Command::Chambers => cmd_chambers(d),
        Command::Order => cmd_order(d),
        Command::Dims => cmd_dims(d),
        Command::Algebra => cmd_algebra(d),
        Command::Koszul => Ok(Outcome::from_checks(koszul_checks(d, cfg.bound())?)),
        Command::Gale => cmd_gale(d),
        Command::Mirror => Ok(Outcome::from_checks(mirror_checks(d, cfg.bound())?)),
        Command::Rh => Ok(Outcome::from_checks(rh_checks(d, cfg.k)?)),
        Command::Skeleton => Ok(Outcome::from_checks(skeleton_checks(d, cfg.bound())?)),
        Command::Report => cmd_report(cfg, d),
        Command::Plot => unreachable!("plot is rendered separately"),
    }
}

fn cmd_validate(d: &CategoryODatum) -> Result<Outcome, Failure> {
    let rep = validate(d);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kind", "subset"]).expect("csv");
    for wit in &rep.witnesses {
        let s = wit.subset.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
        w.write_record([wit.kind.as_str(), s.as_str()]).expect("csv");
    }
    let mut checks = Checks::new();
    checks.insert("validate".into(), check(rep.is_category_o_datum(), &rep));
    Ok(Outcome { checks, csv: Some(String::from_utf8(w.into_inner().expect("csv")).expect("utf8")), ..Default::default() })
}

fn cmd_chambers(d: &CategoryODatum) -> Result<Outcome, Failure> {
    let arr = Arrangement::new(d);
    let (f, b) = (arr.feasible(), arr.bounded());
    let bf: Vec<_> = f.iter().filter(|a| b.contains(a)).copied().collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["sign_vector", "feasible", "bounded"]).expect("csv");
    for a in hypero::SignVector::all(d.n) {
        w.write_record([a.to_string(), f.contains(&a).to_string(), b.contains(&a).to_string()]).expect("csv");
    }
    let details = json!({ "dim_v": arr.dim(), "feasible": f, "bounded": b, "bounded_feasible": bf });
    let mut checks = Checks::new();
    checks.insert("chambers".into(), check(!bf.is_empty(), &details));
    Ok(Outcome { checks, csv: Some(String::from_utf8(w.into_inner().expect("csv")).expect("utf8")), ..Default::default() })
}

fn cmd_order(d: &CategoryODatum) -> Result<Outcome, Failure> {
    let tables = build_order_tables(d)?;
    let mut checks = Checks::new();
    checks.insert("order".into(), check(true, &tables));
    Ok(Outcome { checks, csv: Some(tables.to_csv()), ..Default::default() })
}

fn dims_checks(d: &CategoryODatum) -> Result<Checks, Failure> {
    let pred = predicted_dimensions(d)?;
    let (dr, betti) = par::join(|| quotient_by_unbounded(d, Flavor::DeRham), || quotient_by_unbounded(d, Flavor::Betti));
    let (dr, betti) = (dr?, betti?);
    let cartan = cartan_matrix(&dr);
    let mut checks = Checks::new();
    checks.insert(
        "dims".into(),
        check(
            dr.labels == pred.labels && cartan == pred.cartan && dr.dim() == pred.total,
            &json!({ "predicted": pred, "cartan": cartan, "hilbert": hilbert_matrix(&dr), "total": dr.dim() }),
        ),
    );
    let betti_cartan = cartan_matrix(&betti);
    checks.insert(
        "betti_de_rham".into(),
        check(betti.labels == dr.labels && betti_cartan == cartan, &json!({ "betti": betti_cartan, "de_rham": cartan })),
    );
    Ok(checks)
}

fn cmd_dims(d: &CategoryODatum) -> Result<Outcome, Failure> {
    let checks = dims_checks(d)?;
    Ok(Outcome { checks, csv: Some(predicted_dimensions(d)?.to_csv()), ..Default::default() })
}

fn algebra_checks(a: &FiniteDimAlgebra) -> Result<Checks, Failure> {
    let text = a.to_json();
    let back = FiniteDimAlgebra::from_json(&text)?;
    let mut checks = Checks::new();
    checks.insert(
        "algebra".into(),
        check(
            a.is_associative() && a.has_unit() && a.is_homogeneous(),
            &json!({ "dim": a.dim(), "labels": a.labels, "cartan": cartan_matrix(a), "hilbert": hilbert_matrix(a) }),
        ),
    );
    checks.insert("algebra_round_trip".into(), check(back.to_json() == text, &json!({ "bytes": text.len() })));
    Ok(checks)
}

fn cmd_algebra(d: &CategoryODatum) -> Result<Outcome, Failure> {
    let a = quotient_by_unbounded(d, Flavor::DeRham)?;
    let mut checks = algebra_checks(&a)?;
    if let Some(c) = checks.get_mut("algebra") {
        c.details["structure"] = a.to_json_value();
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "left", "right", "degree", "monomial"]).expect("csv");
    for (i, b) in a.basis.iter().enumerate() {
        let m = b.monomial.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
        w.write_record([i.to_string(), a.labels[b.left].to_string(), a.labels[b.right].to_string(), b.degree.to_string(), m])
            .expect("csv");
    }
    Ok(Outcome {
        checks,
        csv: Some(String::from_utf8(w.into_inner().expect("csv")).expect("utf8")),
        attachments: vec![("algebra_structure.json".into(), a.to_json())],
    })
}

fn koszul_checks(d: &CategoryODatum, bound: usize) -> Result<Checks, Failure> {
    let a = quotient_by_unbounded(d, Flavor::DeRham)?;
    let tables = build_order_tables(d)?;
    let cert = koszulity_check(&a, bound)?;
    let dual = quadratic_dual(&QuadraticData::from_algebra(&a), bound)?;
    let dual_matches = dual.is_finite() && qmat_transpose(&dual.hilbert()) == cert.ext;
    let mut checks = Checks::new();
    checks.insert("koszul".into(), check(cert.is_koszul(), &cert));
    checks.insert("quadratic_dual".into(), check(dual_matches, &dual));
    let sf = standard_filtration_check(&a, &tables)?;
    checks.insert("standard_filtration".into(), check(sf.ok(), &sf));
    let bgg = bgg_reciprocity_check(&a, &tables)?;
    checks.insert("bgg_reciprocity".into(), check(bgg.ok(), &bgg));
    let ex = exceptional_collection_check(&a, &tables, bound)?;
    checks.insert("exceptional_collection".into(), check(ex.ok(), &ex));
    Ok(checks)
}

fn gale_checks(d: &CategoryODatum) -> (Checks, CategoryODatum) {
    let dual = gale_dual(d);
    let rep = validate(&dual);
    let (f, b, fd, bd) = (feasible(d), bounded(d), feasible(&dual), bounded(&dual));
    let back = gale_dual(&dual);
    let mut checks = Checks::new();
    checks.insert("gale_dual_valid".into(), check(rep.is_category_o_datum(), &json!({ "datum": dual.to_json_value(), "validation": rep })));
    checks.insert(
        "gale_swap".into(),
        check(f == bd && b == fd, &json!({ "feasible": f, "bounded": b, "dual_feasible": fd, "dual_bounded": bd })),
    );
    checks.insert(
        "gale_involution".into(),
        check(feasible(&back) == f && bounded(&back) == b, &json!({ "t": back.t_lift, "m": back.m_lift })),
    );
    (checks, dual)
}

fn cmd_gale(d: &CategoryODatum) -> Result<Outcome, Failure> {
    let (checks, dual) = gale_checks(d);
    Ok(Outcome { checks, csv: None, attachments: vec![("gale_dual.json".into(), dual.to_json())] })
}

fn mirror_checks(d: &CategoryODatum, bound: usize) -> Result<Checks, Failure> {
    let rep = mirror_dim_check(d, bound)?;
    let mut checks = Checks::new();
    checks.insert("mirror".into(), check(rep.ok(), &rep));
    Ok(checks)
}

fn rh_checks(d: &CategoryODatum, k: usize) -> Result<Checks, Failure> {
    let (feas, all) = par::join(|| rh_iso_check(d, k, RhDomain::Feasible), || rh_iso_check(d, k, RhDomain::All));
    let (feas, all) = (feas?, all?);
    let mut checks = Checks::new();
    checks.insert("rh_feasible".into(), check(feas.ok(), &feas));
    checks.insert("rh_all".into(), check(all.ok(), &all));
    Ok(checks)
}

fn skeleton_checks(d: &CategoryODatum, bound: usize) -> Result<Checks, Failure> {
    let sk = skeleton_koszul_check(d, bound)?;
    let corner = koszul_corner_check(d, bound)?;
    let mut checks = Checks::new();
    checks.insert("skeleton".into(), check(sk.ok(), &sk));
    checks.insert("koszul_corner".into(), check(corner.ok(), &corner));
    Ok(checks)
}

fn recollement_checks(d: &CategoryODatum) -> Result<Checks, Failure> {
    let a = BlockAlgebra::build(d, Flavor::DeRham)?;
    let e = a.unbounded_feasible();
    let (tor, dg) = par::join(|| tor0_stratifying_check(&a, &e, 8), || derived_quotient_homology(&a, &e, 1, 6));
    let mut checks = Checks::new();
    checks.insert("stratifying_tor0".into(), check(tor.is_iso(), &tor));
    checks.insert("derived_quotient".into(), check(dg.d_squared_zero && dg.h0_matches_naive_quotient(), &dg));
    Ok(checks)
}

fn random_checks(seed: u64, samples: usize) -> Result<Checks, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<CategoryODatum> = (0..samples).map(|_| random_datum(&mut rng, 1, 5)).collect();
    let rows = par::try_map(&data, |d| -> Result<Value, Failure> {
        let pred = predicted_dimensions(d)?;
        let a = quotient_by_unbounded(d, Flavor::DeRham)?;
        let (gale, _) = gale_checks(d);
        Ok(json!({
            "datum": d.to_json_value(),
            "predicted_total": pred.total,
            "computed_total": a.dim(),
            "gale": gale.values().all(|c| c.pass),
        }))
    })?;
    let pass = rows.iter().all(|r| r["predicted_total"] == r["computed_total"] && r["gale"] == true);
    let mut checks = Checks::new();
    checks.insert("random_data".into(), check(pass, &json!({ "seed": seed, "samples": rows })));
    Ok(checks)
}

fn cmd_report(cfg: &RunConfig, d: &CategoryODatum) -> Result<Outcome, Failure> {
    const GROUPS: [&str; 10] =
        ["chambers", "order", "dims", "algebra", "koszul", "gale", "mirror", "rh", "skeleton", "recollement"];
    let mut groups: Vec<&str> = GROUPS.to_vec();
    if cfg.samples > 0 {
        groups.push("random");
    }
    let results = par::map(&groups, |&g| -> Result<Checks, Failure> {
        match g {
            "chambers" => Ok(cmd_chambers(d)?.checks),
            "order" => Ok(cmd_order(d)?.checks),
            "dims" => dims_checks(d),
            "algebra" => algebra_checks(&quotient_by_unbounded(d, Flavor::DeRham)?),
            "koszul" => koszul_checks(d, cfg.bound()),
            "gale" => Ok(gale_checks(d).0),
            "mirror" => mirror_checks(d, cfg.bound()),
            "rh" => rh_checks(d, cfg.k),
            "skeleton" => skeleton_checks(d, cfg.bound()),
            "recollement" => recollement_checks(d),
            "random" => random_checks(cfg.seed, cfg.samples),
            _ => unreachable!(),
        }
    });
    let mut checks = cmd_validate(d)?.checks;
    for r in results {
        checks.extend(r?);
    }
    Ok(Outcome::from_checks(checks))
}
