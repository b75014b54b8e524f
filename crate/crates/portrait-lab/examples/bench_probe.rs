use portrait_lab::exact::rat;
use portrait_lab::gb::{buchberger, normal_form, GbBudget, Ideal};
use portrait_lab::poly::{Monomial, MonomialOrder, MultiPoly, Ring};
use std::sync::Arc;

// reference: definitional Buchberger, no criteria, no deletion
fn reference_gb(ideal: &Ideal) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = ideal.generators().to_vec();
    loop {
        let mut additions = vec![];
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let (lmf, lcf) = basis[i].leading().unwrap();
                let (lmg, lcg) = basis[j].leading().unwrap();
                let lcm = lmf.lcm(lmg);
                let a = basis[i].mul_term(&lmf.div_into(&lcm), &(lcg.clone()));
                let b = basis[j].mul_term(&lmg.div_into(&lcm), &(lcf.clone()));
                let s = a.try_sub(&b).unwrap();
                let r = normal_form(&s, &basis);
                if !r.is_zero() {
                    additions.push(r.primitive());
                }
            }
        }
        if additions.is_empty() {
            break;
        }
        // add one at a time to keep the loop simple
        basis.push(additions.swap_remove(0));
    }
    basis
}

fn reduced_text(ring: &Arc<Ring>, basis: &[MultiPoly]) -> Vec<String> {
    // minimalize + tail reduce + monic, deterministic
    let mut minimal: Vec<MultiPoly> = vec![];
    let mut sorted: Vec<MultiPoly> = basis.to_vec();
    sorted.sort_by(|a, b| ring.order.cmp(&a.leading().unwrap().0, &b.leading().unwrap().0));
    for g in sorted {
        let lm = g.leading().unwrap().0.clone();
        if !minimal.iter().any(|h: &MultiPoly| h.leading().unwrap().0.divides(&lm)) {
            minimal.push(g);
        }
    }
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<MultiPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
            let red = normal_form(&minimal[i], &others).monic();
            if red != minimal[i] { minimal[i] = red; changed = true; }
        }
        if !changed { break; }
    }
    let mut out: Vec<String> = minimal.iter().filter(|g| !g.is_zero()).map(|g| g.to_string()).collect();
    out.sort();
    out
}

fn main() {
    let mut state: u64 = 42;
    let mut next = move || { state ^= state << 13; state ^= state >> 7; state ^= state << 17; state };
    let mut mismatches = 0;
    for trial in 0..300 {
        if trial % 25 == 0 { println!("trial {trial}"); }
        let nvars = 2 + (next() % 2) as usize; // 2..3
        let ring = Ring::new((0..nvars).map(|i| format!("x{i}")).collect(), MonomialOrder::DegRevLex);
        let ngens = 2 + (next() % 3) as usize;
        let gens: Vec<MultiPoly> = (0..ngens).map(|_| {
            let nterms = 2 + (next() % 3) as usize;
            let terms: Vec<(Monomial, _)> = (0..nterms).map(|_| {
                let e: Vec<u16> = (0..nvars).map(|_| (next() % 2) as u16 + if next() % 4 == 0 { 1 } else { 0 }).collect();
                (Monomial(e), rat((next() % 7) as i64 - 3))
            }).collect();
            MultiPoly::from_terms(ring.clone(), terms)
        }).filter(|g| !g.is_zero()).collect();
        if gens.is_empty() { continue; }
        let ideal = Ideal::new(ring.clone(), gens);
        if ideal.generators().is_empty() { continue; }
        let fast = buchberger(&ideal, &GbBudget::unlimited()).unwrap();
        let slow = reference_gb(&ideal);
        let fast_text = reduced_text(&ring, fast.basis());
        let slow_text = reduced_text(&ring, &slow);
        if fast_text != slow_text {
            mismatches += 1;
            println!("MISMATCH trial {trial}:");
            println!("  input: {:?}", ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>());
            println!("  fast: {fast_text:?}");
            println!("  slow: {slow_text:?}");
            if mismatches > 2 { return; }
        }
    }
    println!("{mismatches} mismatches over 300 trials");
}
