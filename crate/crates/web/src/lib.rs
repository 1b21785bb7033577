use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use quiverstack::family::{generate_family, StepFunction};
use quiverstack::field::Gf2;
use quiverstack::format::{emit_alg, parse_alg};
use quiverstack::module::{minimal_resolution, LayeredGraph, Resolver, ResolverOptions};
use quiverstack::monomial::critical_report;

fn respond(r: Result<Value, quiverstack::Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Levels, witness projective dimensions and stack layers for a step function like `1:2,2:4`.
#[wasm_bindgen]
pub fn family_summary(jumps: &str) -> String {
    respond((|| {
        let f = StepFunction::from_jumps(jumps)?;
        let b = generate_family(&f)?;
        let cutoff = f.max_value() + 4;
        let mut levels = Vec::new();
        for level in &b.levels {
            let alg = level.spec.build(&Gf2)?;
            let n = b.witness_module(level.index, &alg)?;
            let mut res = Resolver::new(
                &alg,
                ResolverOptions {
                    cutoff,
                    ..Default::default()
                },
            );
            levels.push(json!({
                "level": level.index,
                "vertices": level.spec.quiver.vertex_count(),
                "arrows": level.spec.quiver.arrow_count(),
                "dimension": alg.dim(),
                "new_vertices": level.new_vertices,
                "witness_pdim": res.pdim(&n).render(),
                "witness_dims": n.render_summary(),
            }));
        }
        Ok(json!({
            "function": f.render(),
            "levels": levels,
            "layers": b.alternate_layers(),
            "top_alg": emit_alg(&b.top().spec),
            "top_witness": b.top().witness,
        }))
    })())
}

/// Critical paths, `s` and the finitistic-dimension interval of a monomial `.alg` text.
#[wasm_bindgen]
pub fn monomial_report(alg_text: &str) -> String {
    respond((|| {
        let alg = parse_alg(alg_text)?.build(&Gf2)?;
        let rep = critical_report(&alg)?;
        Ok(json!({
            "s": rep.s,
            "interval": [rep.interval.0, rep.interval.1],
            "witness": rep.witness,
            "critical": rep.critical.iter().map(|c| json!({"path": c.path, "pdim": c.pdim})).collect::<Vec<_>>(),
        }))
    })())
}

/// Projective dimension and minimal resolution shape of a layered-graph module, over GF(2).
#[wasm_bindgen]
pub fn module_pdim(alg_text: &str, module_text: &str, cutoff: usize) -> String {
    respond((|| {
        let alg = parse_alg(alg_text)?.build(&Gf2)?;
        let m = LayeredGraph::parse(module_text, alg.quiver())?.build(&alg)?;
        let mut res = Resolver::new(
            &alg,
            ResolverOptions {
                cutoff,
                ..Default::default()
            },
        );
        let q = alg.quiver();
        let steps: Vec<Value> = minimal_resolution(&m, cutoff)
            .iter()
            .map(|s| {
                let top: Vec<String> = s
                    .projective_top
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, k)| format!("{}^{k}", q.vertex_name(v)))
                    .collect();
                json!(top.join(" + "))
            })
            .collect();
        Ok(json!({
            "pdim": res.pdim(&m).render(),
            "dims": m.render_summary(),
            "loewy_length": m.loewy_length(),
            "resolution": steps,
        }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_of_one_jump() {
        let v: Value = serde_json::from_str(&family_summary("1:2,2:3")).unwrap();
        assert_eq!(v["levels"][1]["witness_pdim"], "3");
        assert_eq!(v["levels"][1]["vertices"], 7);
        assert_eq!(v["layers"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn errors_are_reported() {
        let v: Value = serde_json::from_str(&family_summary("nonsense")).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn nakayama_pdim() {
        let alg = "vertex 1 2 3\narrow a 1 2\narrow b 2 3\nzero b*a\n";
        let v: Value = serde_json::from_str(&module_pdim(alg, "top x: 1\n", 8)).unwrap();
        assert_eq!(v["pdim"], "2");
        let r: Value = serde_json::from_str(&monomial_report(alg)).unwrap();
        assert_eq!(r["s"], 0);
    }
}
