//! One handler per subcommand; each returns the report body and verdict.

use crate::{
    Command, EmbedCommand, GenerateArgs, Gs3Command, Kind, Mode, Outcome, PartitionArgs, StabilityArgs, StrategyArg,
    VerifyArgs,
};
use avgreg::embedding::{
    check_halfsimplex_realizable, check_monotone, embed_into_gs3, sample_common_sub, validate_embedding,
    validate_monotone, validate_realization, Monotonicity, Realizability,
};
use avgreg::generators::{
    gen_gs_instance, gen_halfsimplex_grid, gen_parity_system, gen_random_average, gen_random_bipartite, grid_points,
    TernaryInstance,
};
use avgreg::gs3::{
    build_all, check_family, enumerate_R_sR, verify_triple_homogeneity, verify_two_direction_claim, Gs3Context,
    Gs3Partitions, PAIRS,
};
use avgreg::hypergraph::Hypergraph3;
use avgreg::io::{read_instance, read_partition, write_instance, write_partition, Instance};
use avgreg::rational::{fmt_rational, one, parse_rational, zero};
use avgreg::regularity::{
    build_regular_partition_avg, verify_strong_regularity, ConstructOptions, HomogeneityReport, Strategy,
};
use avgreg::stability::{max_ladder_exact, max_ladder_greedy, validate_ladder};
use avgreg::{BudgetFn, Error, PartiteFunction, Result, WeightedPart};
use serde_json::{json, Value};
use std::path::Path;

pub fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Generate(a) => generate(a),
        Command::Stability(a) => stability(a),
        Command::Partition(a) => partition(a),
        Command::Verify(a) => verify(a),
        Command::Gs3(Gs3Command::Analyze(a)) => gs3_analyze(&a.input),
        Command::Gs3(Gs3Command::Partition(a)) => gs3_partition(&a.input, &a.out),
        Command::Gs3(Gs3Command::Verify(a)) => gs3_verify(&a.input),
        Command::Embed(EmbedCommand::Monotone(a)) => embed_monotone(&a.input, a.witness.as_deref()),
        Command::Embed(EmbedCommand::Halfsimplex(a)) => embed_halfsimplex(&a.input, a.witness.as_deref()),
        Command::Embed(EmbedCommand::Gs3(a)) => embed_gs3(&a.input, a.witness.as_deref(), a.n),
        Command::Run { .. } => Err(Error::Parameter("nested run".into())),
    }
}

fn ser<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn sizes_or(a: &GenerateArgs, default: &[usize]) -> Vec<usize> {
    a.sizes.clone().unwrap_or_else(|| default.to_vec())
}

fn three(s: &[usize]) -> Result<[usize; 3]> {
    s.try_into().map_err(|_| Error::Parameter(format!("expected three part sizes, got {}", s.len())))
}

fn generate(a: &GenerateArgs) -> Result<Outcome> {
    let density = parse_rational(&a.density)?;
    let mut extra = Value::Null;
    let inst = match a.kind {
        Kind::Average => {
            let s = sizes_or(a, &[6, 6]);
            if s.len() != 2 {
                return Err(Error::Parameter("average takes two part sizes".into()));
            }
            Instance::Average(gen_random_average(a.seed, &s, 1, a.omega, &density)?)
        }
        Kind::RandomAverage => {
            Instance::Average(gen_random_average(a.seed, &sizes_or(a, &[4, 4, 4]), a.d, a.omega, &density)?)
        }
        Kind::Parity => {
            let s = three(&sizes_or(a, &[4, 4, 4]))?;
            let seeds = [0, 1, 2].map(|i| a.seed.wrapping_mul(3).wrapping_add(i));
            let pairs = [(0, 1), (0, 2), (1, 2)];
            let graphs: Vec<_> =
                pairs.iter().zip(seeds).map(|(&(u, v), sd)| gen_random_bipartite(sd, s[u], s[v], &density)).collect();
            let parts = [WeightedPart::uniform(s[0])?, WeightedPart::uniform(s[1])?, WeightedPart::uniform(s[2])?];
            Instance::Average(gen_parity_system(parts, [&graphs[0], &graphs[1], &graphs[2]])?)
        }
        Kind::Gs => Instance::Ternary { instance: gen_gs_instance(a.p, a.n, None, None)?, orders: None },
        Kind::Halfsimplex => {
            let pts = grid_points(a.points);
            let h = gen_halfsimplex_grid([&pts, &pts, &pts])?;
            Instance::Function(indicator_function(&h)?)
        }
        Kind::GsSample => {
            let s = three(&sizes_or(a, &[3, 3, 3]))?;
            let sample = sample_common_sub(a.seed, a.n, s, a.zero_fraction, a.attempts)?;
            extra = ser(&sample)?;
            Instance::Ternary { instance: sample.instance, orders: Some(sample.orders) }
        }
    };
    write_instance(&a.out, &inst)?;
    let sizes: Vec<usize> = match &inst {
        Instance::Average(s) => s.parts().iter().map(|p| p.len()).collect(),
        Instance::Ternary { instance, .. } => instance.sizes().to_vec(),
        Instance::Function(f) => f.parts().iter().map(|p| p.len()).collect(),
    };
    Ok(Outcome {
        pass: true,
        result: json!({ "instance_kind": inst.kind(), "sizes": sizes, "sample": extra }),
        tsv: None,
    })
}

fn indicator_function(h: &Hypergraph3) -> Result<PartiteFunction> {
    let parts = (0..3)
        .map(|u| WeightedPart::uniform_labeled(h.labels(u).to_vec()))
        .collect::<Result<Vec<_>>>()?;
    PartiteFunction::from_fn(parts, |t| if h.is_edge(t[0], t[1], t[2]) { one() } else { zero() })
}

fn stability(a: &StabilityArgs) -> Result<Outcome> {
    let f = read_instance(&a.input)?.to_function()?;
    let delta = parse_rational(&a.delta)?;
    let (len, w) = match a.mode {
        Mode::Exact => max_ladder_exact(&f, &delta, a.cap)?,
        Mode::Greedy => max_ladder_greedy(&f, &delta, a.seed, a.iterations)?,
    };
    let valid = len == 0 || validate_ladder(&f, &w);
    Ok(Outcome {
        pass: valid,
        result: json!({ "length": len, "witness": ser(&w)?, "witness_valid": valid }),
        tsv: None,
    })
}

fn parse_budget(s: &str) -> Result<BudgetFn> {
    s.parse()
}

fn homogeneity_outcome(r: HomogeneityReport, extra: Value) -> Result<Outcome> {
    let tsv = r.to_tsv();
    Ok(Outcome { pass: r.pass, result: json!({ "construction": extra, "verification": ser(&r)? }), tsv: Some(tsv) })
}

fn partition(a: &PartitionArgs) -> Result<Outcome> {
    let sys = match read_instance(&a.input)? {
        Instance::Average(s) => s,
        other => return Err(Error::Structural(format!("partition needs an average instance, got {}", other.kind()))),
    };
    let eps = parse_rational(&a.epsilon)?;
    let budget = parse_budget(&a.budget)?;
    let opts = ConstructOptions {
        strategy: match a.strategy {
            StrategyArg::Profile => Strategy::Profile,
            StrategyArg::Energy => Strategy::Energy,
        },
        eta: parse_rational(&a.eta)?,
        max_steps: a.max_steps,
    };
    let c = build_regular_partition_avg(&sys, &eps, &budget, &opts)?;
    write_partition(&a.out, &c.partition)?;
    let r = verify_strong_regularity(&sys.to_function(), &c.partition, &eps, &budget)?;
    homogeneity_outcome(r, ser(&c)?)
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let f = read_instance(&a.input)?.to_function()?;
    let p = read_partition(&a.partition)?;
    let r = verify_strong_regularity(&f, &p, &parse_rational(&a.epsilon)?, &parse_budget(&a.budget)?)?;
    homogeneity_outcome(r, Value::Null)
}

/// Orders from the file, else from a monotonicity witness, else identity.
fn gs3_context(path: &Path) -> Result<(Gs3Context, &'static str, bool)> {
    let (instance, orders): (TernaryInstance, _) = match read_instance(path)? {
        Instance::Ternary { instance, orders } => (instance, orders),
        other => return Err(Error::Structural(format!("gs3 needs a ternary instance, got {}", other.kind()))),
    };
    let mono = check_monotone(&instance.to_hypergraph());
    let (orders, source) = match (orders, mono.witness()) {
        (Some(o), _) => (Some(o), "file"),
        (None, Some(w)) => (Some(w.orders.clone()), "monotonicity-witness"),
        (None, None) => (None, "identity"),
    };
    Ok((Gs3Context::new(instance, orders)?, source, mono.is_monotone()))
}

fn census_tsv(all: &Gs3Partitions) -> String {
    let mut s = String::from("u\tv\tclass\tcount\n");
    for p in &all.partitions {
        for (class, n) in &p.census {
            s += &format!("{}\t{}\t{class}\t{n}\n", p.u, p.v);
        }
    }
    s
}

fn gs3_analyze(input: &Path) -> Result<Outcome> {
    let (ctx, source, monotone) = gs3_context(input)?;
    let all = build_all(&ctx)?;
    let census: Vec<Value> =
        all.partitions.iter().map(|p| json!({ "u": p.u, "v": p.v, "census": p.census })).collect();
    let result = json!({
        "sizes": ctx.instance().sizes(),
        "depth": ctx.depth(),
        "orders_source": source,
        "monotone": monotone,
        "families": ser(&all.families)?,
        "null_ledger": ser(&all.ledger)?,
        "census": census,
        "two_direction": ser(&verify_two_direction_claim(&ctx))?,
    });
    Ok(Outcome { pass: true, result, tsv: Some(census_tsv(&all)) })
}

fn gs3_partition(input: &Path, out: &Path) -> Result<Outcome> {
    let (ctx, source, monotone) = gs3_context(input)?;
    let all = build_all(&ctx)?;
    write_partition(out, &all.to_graded()?)?;
    let result = json!({
        "orders_source": source,
        "monotone": monotone,
        "families": ser(&all.families)?,
        "partitions": ser(&all.partitions)?,
    });
    Ok(Outcome { pass: true, result, tsv: Some(census_tsv(&all)) })
}

fn gs3_verify(input: &Path) -> Result<Outcome> {
    let (ctx, source, monotone) = gs3_context(input)?;
    let all = build_all(&ctx)?;
    let mut families = Vec::new();
    for (k, &(u, v)) in PAIRS.iter().enumerate() {
        let oracle = enumerate_R_sR(&ctx, u, v)?;
        families.push(check_family(&ctx, &all.families[k], &oracle));
    }
    let mass: Vec<bool> = all.partitions.iter().map(|p| p.conserves_mass()).collect();
    let two = verify_two_direction_claim(&ctx);
    let hom = verify_triple_homogeneity(&ctx, &all.partitions)?;
    let pass = families.iter().all(|f| f.pass()) && mass.iter().all(|&m| m) && two.pass && hom.pass;
    let mut tsv = String::from("x_part\ty_part\tz_part\tsize\tpositive\tedge\tnon_edge\n");
    for f in &hom.strict_failures {
        let key: Vec<String> = f.key.iter().map(|c| format!("{c:?}")).collect();
        tsv += &format!("{}\t{}\t{}\t{:?}\t{:?}\n", key.join("\t"), f.size, f.positive, f.edge, f.non_edge);
    }
    let result = json!({
        "orders_source": source,
        "monotone": monotone,
        "families": ser(&families)?,
        "mass_conserved": mass,
        "z_measure": fmt_rational(&all.ledger.z_measure(&ctx)),
        "two_direction": ser(&two)?,
        "homogeneity": ser(&hom)?,
    });
    Ok(Outcome { pass, result, tsv: Some(tsv) })
}

/// The 0/1-valued 3-partite instance as a hypergraph.
fn hypergraph(path: &Path) -> Result<Hypergraph3> {
    let inst = read_instance(path)?;
    if let Instance::Ternary { instance, .. } = &inst {
        return Ok(instance.to_hypergraph());
    }
    let f = inst.to_function()?;
    if f.arity() != 3 || !f.is_indicator() {
        return Err(Error::Structural("embedding needs a 3-partite 0/1-valued instance".into()));
    }
    let labels = [0, 1, 2].map(|u| f.parts()[u].labels().to_vec());
    Ok(Hypergraph3::from_fn(labels, |x, y, z| f.value(&[x, y, z]) == &one()))
}

fn write_witness(path: Option<&Path>, v: &Value) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, serde_json::to_string_pretty(v)? + "\n")?;
    }
    Ok(())
}

fn embed_monotone(input: &Path, witness: Option<&Path>) -> Result<Outcome> {
    let h = hypergraph(input)?;
    let m = check_monotone(&h);
    let valid = match &m {
        Monotonicity::Monotone(w) => validate_monotone(&h, w),
        Monotonicity::NotMonotone(_) => true,
    };
    let v = ser(&m)?;
    write_witness(witness, &v)?;
    Ok(Outcome { pass: m.is_monotone() && valid, result: json!({ "monotonicity": v, "witness_valid": valid }), tsv: None })
}

fn embed_halfsimplex(input: &Path, witness: Option<&Path>) -> Result<Outcome> {
    let h = hypergraph(input)?;
    let r = check_halfsimplex_realizable(&h);
    let valid = match &r {
        Realizability::Realizable(w) => validate_realization(&h, w),
        Realizability::NotRealizable { .. } => true,
    };
    let v = ser(&r)?;
    write_witness(witness, &v)?;
    Ok(Outcome {
        pass: r.is_realizable() && valid,
        result: json!({ "realizability": v, "witness_valid": valid }),
        tsv: None,
    })
}

fn embed_gs3(input: &Path, witness: Option<&Path>, n: usize) -> Result<Outcome> {
    let h = hypergraph(input)?;
    let e = embed_into_gs3(&h, n)?;
    let valid = e.as_ref().is_none_or(|e| validate_embedding(&h, e));
    let v = match &e {
        Some(e) => json!({ "verdict": "EMBEDDED", "embedding": ser(e)? }),
        None => json!({ "verdict": "NONE", "n": n }),
    };
    write_witness(witness, &v)?;
    Ok(Outcome { pass: e.is_some() && valid, result: json!({ "embedding": v, "witness_valid": valid }), tsv: None })
}
