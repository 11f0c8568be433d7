//! Subcommand implementations. Every command resolves its config, runs the
//! corresponding library operation, and writes JSON and/or CSV reports under
//! the output directory. Reports are deterministic for a fixed config+seed.

use crate::config::{enumeration_limit, resolve_ring, Format, Opts, Resolved};
use crate::{CliError, CliResult};
use serde_json::{json, Value};
use std::path::Path;
use std::sync::Arc;
use twistmat::automorphisms::serial::{automorphism_from_name, descriptor_from_json};
use twistmat::automorphisms::{automorphism_table, check_superdiagonal_form, induce_on_quotient};
use twistmat::groups::{enumerate_finite_group, is_finitely_generated, IndexSet, QuotientSpec};
use twistmat::report::{csv_line, ReportEnvelope};
use twistmat::rings::parse::{element_from_str, poly_from_str};
use twistmat::rings::{Modulus, RingSpec};
use twistmat::sampling;
use twistmat::suites::{verify_relations as run_relations, RELATION_IDENTITIES};
use twistmat::twisted::{
    conjugacy_class_count, enumerate_automorphisms_small, fix_family_certify,
    fix_trivial_box_search, fixed_points, reidemeister_classes,
};

fn write_reports(
    out_dir: &Path,
    name: &str,
    format: Format,
    json_text: &str,
    csv_text: Option<String>,
) -> CliResult<Vec<String>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    if matches!(format, Format::Json | Format::Both) {
        let path = out_dir.join(format!("{name}.json"));
        std::fs::write(&path, json_text)?;
        written.push(path.display().to_string());
    }
    if matches!(format, Format::Csv | Format::Both) {
        if let Some(csv) = csv_text {
            let path = out_dir.join(format!("{name}.csv"));
            std::fs::write(&path, csv)?;
            written.push(path.display().to_string());
        }
    }
    Ok(written)
}

fn single_ring(resolved: &Resolved, default: Option<&str>) -> CliResult<Arc<RingSpec>> {
    let rings = resolved.rings();
    match (rings.len(), default) {
        (0, Some(d)) => resolve_ring(d),
        (0, None) => Err(CliError::Usage("pass a ring with --ring".into())),
        (1, _) => resolve_ring(&rings[0]),
        _ => Err(CliError::Usage("this command takes exactly one --ring".into())),
    }
}

fn parse_quotient(text: &str, ring: &Arc<RingSpec>) -> CliResult<QuotientSpec> {
    let t = text.trim();
    if t.starts_with('{') {
        let value: Value =
            serde_json::from_str(t).map_err(|e| CliError::Usage(format!("quotient: {e}")))?;
        let kind = value
            .get("quotient")
            .and_then(|v| v.as_str())
            .ok_or_else(|| CliError::Usage("quotient JSON needs a 'quotient' tag".into()))?;
        return match kind {
            "none" => Ok(QuotientSpec::None),
            "mod_commutator_u" => Ok(QuotientSpec::ModCommutatorU),
            "mod_center_u4" => Ok(QuotientSpec::ModCenterU4),
            "mod_ideal" => {
                if let Some(p) = value.get("p").and_then(|v| v.as_u64()) {
                    Ok(QuotientSpec::ModIdeal(Modulus::Prime(p)))
                } else if let Some(g) = value.get("g").and_then(|v| v.as_str()) {
                    let base = ring
                        .base_field()
                        .ok_or_else(|| CliError::Usage("polynomial modulus needs a polynomial ring".into()))?;
                    let poly = poly_from_str(base, g).map_err(CliError::usage)?;
                    Ok(QuotientSpec::ModIdeal(Modulus::Poly(poly)))
                } else {
                    Err(CliError::Usage("mod_ideal needs 'p' or 'g'".into()))
                }
            }
            other => Err(CliError::Usage(format!("unknown quotient {other}"))),
        };
    }
    match t {
        "none" => Ok(QuotientSpec::None),
        "mod_commutator_u" | "mod-commutator-u" | "mod_u'" => Ok(QuotientSpec::ModCommutatorU),
        "mod_center_u4" | "mod-center-u4" => Ok(QuotientSpec::ModCenterU4),
        other => Err(CliError::Usage(format!("unknown quotient {other}"))),
    }
}

fn default_index_set(n: usize) -> Vec<usize> {
    // the featured family: I = {2, ..., n-1}
    (2..n).collect()
}

pub fn verify_relations(opts: Opts) -> CliResult<()> {
    let resolved = opts.resolve()?;
    let ring = single_ring(&resolved, Some("Z"))?;
    let n = resolved.n(4);
    let full: Vec<usize> = (1..=n).collect();
    let ix = resolved.set_i(n, &full)?;
    let samples = resolved.samples(200);
    let seed = resolved.seed();

    let outcomes = run_relations(&ring, &ix, samples, seed).map_err(CliError::math)?;
    let failed: usize = outcomes.iter().map(|o| o.failures).sum();

    let config = json!({
        "command": "verify-relations",
        "ring": ring.to_string(),
        "n": n,
        "set_i": ix.members(),
        "samples": samples,
    });
    let envelope = ReportEnvelope::new(
        seed,
        config,
        RELATION_IDENTITIES.iter().map(|s| s.to_string()).collect(),
        &outcomes,
    );
    let mut csv = String::from("relation,samples,failures\n");
    for o in &outcomes {
        csv.push_str(&csv_line(&[
            o.relation.clone(),
            o.samples.to_string(),
            o.failures.to_string(),
        ]));
        csv.push('\n');
    }
    let written = write_reports(
        &resolved.out_dir(),
        "verify_relations",
        resolved.format(),
        &envelope.to_json_pretty(),
        Some(csv),
    )?;
    for path in written {
        println!("wrote {path}");
    }
    if failed > 0 {
        return Err(CliError::Math(format!("{failed} relation check(s) failed")));
    }
    println!(
        "all {} relations hold on {} samples over {}",
        outcomes.len(),
        samples,
        ring
    );
    Ok(())
}

pub fn reidemeister(opts: Opts) -> CliResult<()> {
    let resolved = opts.resolve()?;
    let ring = single_ring(&resolved, None)?;
    let n = resolved.n(4);
    let ix = resolved.set_i(n, &default_index_set(n))?;
    let seed = resolved.seed();
    let aut_text = resolved.aut("identity");
    let quotient_text = resolved.quotient("none");
    let qspec = parse_quotient(&quotient_text, &ring)?;
    let limit = enumeration_limit();

    let phi = automorphism_from_name(&aut_text, &ix, &ring).map_err(CliError::usage)?;

    // resolve to a finite enumerated group plus an automorphism over it
    let (group, induced) = match (&*ring, &qspec) {
        (RingSpec::FiniteField(fq), QuotientSpec::ModIdeal(_)) => {
            let _ = fq;
            return Err(CliError::Usage(
                "the ring is already a finite field; pick none/mod_commutator_u/mod_center_u4".into(),
            ));
        }
        (RingSpec::FiniteField(fq), q) => {
            let group = enumerate_finite_group(&ix, fq, q, limit).map_err(CliError::math)?;
            let induced = induce_on_quotient(&phi, &ix, &ring, q, seed).map_err(CliError::math)?;
            (group, induced)
        }
        (_, QuotientSpec::ModIdeal(m)) => {
            let target = twistmat::rings::residue_field_spec(&ring, m).map_err(CliError::usage)?;
            let group = enumerate_finite_group(&ix, &target, &QuotientSpec::None, limit)
                .map_err(CliError::math)?;
            let induced =
                induce_on_quotient(&phi, &ix, &ring, &qspec, seed).map_err(CliError::math)?;
            (group, induced)
        }
        _ => {
            return Err(CliError::Usage(
                "the group is infinite; reduce with --quotient '{\"quotient\":\"mod_ideal\",...}' or pick a finite-field ring".into(),
            ))
        }
    };

    let table = automorphism_table(&group, &induced).map_err(CliError::math)?;
    let report = reidemeister_classes(&group, &table, &aut_text).map_err(CliError::math)?;
    let fixed = fixed_points(&group, &table).len();

    // two independent computations when the automorphism is the identity
    if matches!(aut_text.as_str(), "identity" | "id") {
        let conj = conjugacy_class_count(&group);
        if conj != report.class_count {
            return Err(CliError::Math(format!(
                "class count {} disagrees with the direct conjugacy computation {}",
                report.class_count, conj
            )));
        }
    }

    let config = json!({
        "command": "reidemeister",
        "ring": ring.to_string(),
        "n": n,
        "set_i": ix.members(),
        "quotient": quotient_text,
        "aut": aut_text,
    });
    let result = json!({
        "report": report,
        "fixed_points": fixed,
    });
    let envelope = ReportEnvelope::new(
        seed,
        config,
        vec![
            "R(phi) = number of orbits of (g, x) -> g x phi(g)^-1".into(),
            "R(iota_g . phi) = R(phi . iota_g) = R(phi)".into(),
        ],
        result,
    );
    let mut csv = String::from("group,order,automorphism,r,fixed_points\n");
    csv.push_str(&csv_line(&[
        report.group.clone(),
        report.order.to_string(),
        report.automorphism.clone(),
        report.class_count.to_string(),
        fixed.to_string(),
    ]));
    csv.push('\n');
    let written = write_reports(
        &resolved.out_dir(),
        "reidemeister",
        resolved.format(),
        &envelope.to_json_pretty(),
        Some(csv),
    )?;
    for path in written {
        println!("wrote {path}");
    }
    println!(
        "group {} of order {}: R({}) = {}, {} fixed point(s)",
        report.group, report.order, aut_text, report.class_count, fixed
    );
    Ok(())
}

pub fn fix_family(opts: Opts) -> CliResult<()> {
    let resolved = opts.resolve()?;
    let ring = single_ring(&resolved, None)?;
    let n = resolved.n(4);
    let ix = resolved.set_i(n, &default_index_set(n))?;
    let seed = resolved.seed();
    let epsilon = resolved.epsilon();
    let count = resolved.count(100);
    let alpha_text = resolved.alpha("identity");
    let alpha = if alpha_text.trim().starts_with('{') {
        let value: Value = serde_json::from_str(&alpha_text)
            .map_err(|e| CliError::Usage(format!("alpha: {e}")))?;
        descriptor_from_json(&value).map_err(CliError::usage)?
    } else {
        descriptor_from_json(&Value::String(alpha_text.clone())).map_err(CliError::usage)?
    };

    let d_c: Vec<twistmat::rings::RingElement> = match resolved.dc() {
        Some(text) => text
            .split(',')
            .map(|s| element_from_str(&ring, s.trim()).map_err(CliError::usage))
            .collect::<CliResult<Vec<_>>>()?,
        None => {
            // random units on the complement of I, seeded
            let mut rng = sampling::rng_from_seed(seed);
            (1..=n)
                .map(|i| {
                    if ix.contains(i) {
                        twistmat::rings::RingElement::one(&ring)
                    } else {
                        sampling::random_unit(&ring, &mut rng)
                    }
                })
                .collect()
        }
    };

    let certificate = fix_family_certify(&ix, &ring, epsilon, &alpha, &d_c, count)
        .map_err(CliError::math)?;

    let config = json!({
        "command": "fix-family",
        "ring": ring.to_string(),
        "n": n,
        "set_i": ix.members(),
        "epsilon": epsilon,
        "alpha": alpha_text,
        "dc": d_c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "count": count,
    });
    let envelope = ReportEnvelope::new(
        seed,
        config,
        vec![
            "e_12(s) e_{n-1,n}(s) is fixed by iota_{d^c_*} . iota_{d^c} . tau^eps . alpha_*".into(),
            "infinitely many fixed points force R(phi) = infinity for finitely generated residually finite groups".into(),
        ],
        &certificate,
    );
    let csv = format!(
        "group,quotient,epsilon,verified,requested,finitely_generated,reason\n{}\n",
        csv_line(&[
            certificate.group.clone(),
            certificate.quotient.clone(),
            epsilon.to_string(),
            certificate.verified.to_string(),
            certificate.requested.to_string(),
            certificate.finitely_generated.finitely_generated.to_string(),
            certificate.finitely_generated.reason.clone(),
        ])
    );
    let written = write_reports(
        &resolved.out_dir(),
        "fix_family",
        resolved.format(),
        &envelope.to_json_pretty(),
        Some(csv),
    )?;
    for path in written {
        println!("wrote {path}");
    }
    println!(
        "certified {}/{} parameters fixed for {}",
        certificate.verified, certificate.requested, certificate.group
    );
    Ok(())
}

pub fn ring_aut_search(opts: Opts) -> CliResult<()> {
    let resolved = opts.resolve()?;
    let ring = single_ring(&resolved, None)?;
    let bound = resolved.bound(5);
    let seed = resolved.seed();
    let survivors = twistmat::rings::ring_aut_search(&ring, bound).map_err(CliError::math)?;

    let config = json!({
        "command": "ring-aut-search",
        "ring": ring.to_string(),
        "bound": bound,
    });
    let result = json!({
        "survivors": survivors
            .iter()
            .map(twistmat::automorphisms::serial::descriptor_to_json)
            .collect::<Vec<_>>(),
        "count": survivors.len(),
    });
    let envelope = ReportEnvelope::new(
        seed,
        config,
        vec![
            "phi(t) = t^a f(t)^b, phi(f) = t^c f(t)^d with ad - bc = ±1".into(),
            "f(phi(t)) = phi(f(t)) as an identity in the fraction field".into(),
        ],
        result,
    );
    let mut csv = String::from("a,b,c,d\n");
    for s in &survivors {
        if let Some([a, b, c, d]) = twistmat::rings::monomial_matrix(s) {
            csv.push_str(&format!("{a},{b},{c},{d}\n"));
        }
    }
    let written = write_reports(
        &resolved.out_dir(),
        "ring_aut_search",
        resolved.format(),
        &envelope.to_json_pretty(),
        Some(csv),
    )?;
    for path in written {
        println!("wrote {path}");
    }
    println!("{} automorphism(s) of {} survive at bound {}", survivors.len(), ring, bound);
    Ok(())
}


pub fn fingen_table(opts: Opts) -> CliResult<()> {
    let resolved = opts.resolve()?;
    let ring_texts = resolved.rings();
    if ring_texts.is_empty() {
        return Err(CliError::Usage("pass at least one --ring".into()));
    }
    let n = resolved.n(4);
    let seed = resolved.seed();

    #[derive(serde::Serialize)]
    struct Row {
        ring: String,
        n: usize,
        set_i: String,
        finitely_generated: bool,
        reason: String,
    }

    let mut rows = Vec::new();
    for text in &ring_texts {
        let ring = resolve_ring(text)?;
        for mask in 0..(1u32 << n) {
            let members: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let ix = IndexSet::new(n, &members).map_err(CliError::usage)?;
            let verdict = is_finitely_generated(&ring, &ix);
            rows.push(Row {
                ring: ring.to_string(),
                n,
                set_i: ix.to_string(),
                finitely_generated: verdict.finitely_generated,
                reason: verdict.reason,
            });
        }
    }

    let config = json!({
        "command": "fingen-table",
        "rings": ring_texts,
        "n": n,
    });
    let envelope = ReportEnvelope::new(
        seed,
        config,
        vec![
            "finitely generated iff (R,+) is f.g., or U(R) is f.g. and R is a f.g. U(R)-module and I has no gaps".into(),
        ],
        &rows,
    );
    let mut csv = String::from("ring,n,set_i,verdict,reason\n");
    for r in &rows {
        csv.push_str(&csv_line(&[
            r.ring.clone(),
            r.n.to_string(),
            r.set_i.clone(),
            if r.finitely_generated { "yes".into() } else { "no".into() },
            r.reason.clone(),
        ]));
        csv.push('\n');
    }
    let written = write_reports(
        &resolved.out_dir(),
        "fingen_table",
        resolved.format(),
        &envelope.to_json_pretty(),
        Some(csv),
    )?;
    for path in written {
        println!("wrote {path}");
    }
    println!("{} rows over {} ring(s)", rows.len(), ring_texts.len());
    Ok(())
}

pub fn box_search(opts: Opts) -> CliResult<()> {
    let resolved = opts.resolve()?;
    let ring = single_ring(&resolved, Some("Z"))?;
    let ix = resolved.set_i(3, &[2])?;
    let seed = resolved.seed();
    let bound = resolved.bound(20);
    let exp_bound = resolved.exp_bound(1);
    let aut_text = resolved.aut("psi_d2_1");
    let phi = automorphism_from_name(&aut_text, &ix, &ring).map_err(CliError::usage)?;

    let report =
        fix_trivial_box_search(&phi, &ix, &ring, bound, exp_bound).map_err(CliError::math)?;

    let config = json!({
        "command": "box-search",
        "ring": ring.to_string(),
        "set_i": ix.members(),
        "aut": aut_text,
        "bound": bound,
        "exp_bound": exp_bound,
    });
    let envelope = ReportEnvelope::new(
        seed,
        config,
        vec!["Fix(phi) = { g : phi(g) = g }".into()],
        &report,
    );
    let mut csv = String::from("fixed_point\n");
    for p in &report.fixed_points {
        csv.push_str(&csv_line(std::slice::from_ref(p)));
        csv.push('\n');
    }
    let written = write_reports(
        &resolved.out_dir(),
        "box_search",
        resolved.format(),
        &envelope.to_json_pretty(),
        Some(csv),
    )?;
    for path in written {
        println!("wrote {path}");
    }
    println!(
        "{} of {} box points fixed by {}",
        report.fixed_points.len(),
        report.points_checked,
        aut_text
    );
    Ok(())
}

pub fn aut_enum(opts: Opts) -> CliResult<()> {
    let resolved = opts.resolve()?;
    let ring = single_ring(&resolved, None)?;
    let n = resolved.n(4);
    let ix = resolved.set_i(n, &default_index_set(n))?;
    let seed = resolved.seed();
    let quotient_text = resolved.quotient("mod_commutator_u");
    let qspec = parse_quotient(&quotient_text, &ring)?;
    let aut_limit = resolved.aut_limit(200);
    let limit = enumeration_limit();

    let fq = match &*ring {
        RingSpec::FiniteField(fq) => fq.clone(),
        _ => return Err(CliError::Usage("aut-enum needs a finite field ring".into())),
    };
    let group = enumerate_finite_group(&ix, &fq, &qspec, limit).map_err(CliError::math)?;
    let tables = enumerate_automorphisms_small(&group, aut_limit).map_err(CliError::math)?;

    let is_mod_commutator = matches!(qspec, QuotientSpec::ModCommutatorU);
    let mut with_form = 0usize;
    let mut fixes_middle = 0usize;
    let mut csv = String::from("index,has_superdiagonal_form,sigma,fixes_slot_23\n");
    let middle_slot = if n == 4 { Some(1usize) } else { None };
    for (idx, table) in tables.iter().enumerate() {
        let (has_form, sigma_text, fixes) = if is_mod_commutator {
            match check_superdiagonal_form(&group, table).map_err(CliError::math)? {
                Some(form) => {
                    with_form += 1;
                    let fixes = middle_slot.map(|s| form.fixes_slot(s)).unwrap_or(false);
                    if fixes {
                        fixes_middle += 1;
                    }
                    let sigma: Vec<String> =
                        form.sigma.iter().map(|s| (s + 1).to_string()).collect();
                    (true, sigma.join(" "), fixes)
                }
                None => (false, String::new(), false),
            }
        } else {
            (false, String::new(), false)
        };
        csv.push_str(&csv_line(&[
            idx.to_string(),
            has_form.to_string(),
            sigma_text,
            fixes.to_string(),
        ]));
        csv.push('\n');
    }

    let note = if is_mod_commutator && middle_slot.is_some() && fixes_middle != tables.len() {
        format!(
            "{} of {} automorphisms move slot (2,3); the slot-(2,3) rigidity belongs to the mod-centre configuration and is recorded here, not asserted",
            tables.len() - fixes_middle,
            tables.len()
        )
    } else {
        String::new()
    };

    let config = json!({
        "command": "aut-enum",
        "ring": ring.to_string(),
        "n": n,
        "set_i": ix.members(),
        "quotient": quotient_text,
        "aut_limit": aut_limit,
    });
    let result = json!({
        "group": group.describe(),
        "order": group.order(),
        "automorphism_count": tables.len(),
        "with_superdiagonal_form": with_form,
        "sigma_fixes_slot_23": fixes_middle,
        "note": note,
    });
    let envelope = ReportEnvelope::new(
        seed,
        config,
        vec!["phi(e_slot(r)) = e_sigma(slot)(Phi_slot(r)) with each Phi_slot an additive bijection".into()],
        result,
    );
    let written = write_reports(
        &resolved.out_dir(),
        "aut_enum",
        resolved.format(),
        &envelope.to_json_pretty(),
        Some(csv),
    )?;
    for path in written {
        println!("wrote {path}");
    }
    println!(
        "{} automorphisms of {} ({} with superdiagonal form)",
        tables.len(),
        group.describe(),
        with_form
    );
    if is_mod_commutator && with_form != tables.len() {
        return Err(CliError::Math(format!(
            "{} automorphism(s) without superdiagonal form",
            tables.len() - with_form
        )));
    }
    Ok(())
}
