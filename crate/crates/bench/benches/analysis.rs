use criterion::{black_box, criterion_group, criterion_main, Criterion};

use dpframe_bench::{ack_start, Fixture};
use dpframe_core::norm::verify_lemmas;
use dpframe_core::{
    compute_dps, dheight, generate_rsim, search_proof, simulate_step, Fuel, NormContext, RpFunction, Translator,
};

fn proofs(c: &mut Criterion) {
    let sup = Fixture::new("rsup");
    let dieter = Fixture::new("rsdieter");
    c.bench_function("dps/rsdieter", |b| b.iter(|| compute_dps(black_box(&dieter.entry.trs))));
    let cfg = sup.entry.search_config();
    c.bench_function("search/rsup", |b| b.iter(|| search_proof(black_box(&sup.entry.trs), &cfg)));
}

fn heights(c: &mut Criterion) {
    let ack = Fixture::new("rsack");
    let t = ack_start(&ack, 2, 2);
    c.bench_function("dheight/ack(2,2)", |b| {
        b.iter(|| dheight(black_box(&t), ack.entry.trs.rules(), Fuel::default()))
    });
}

fn norms(c: &mut Criterion) {
    let sup = Fixture::new("rsup");
    let ctx = NormContext::new(&sup.tree, Fuel::default());
    let starts = sup.ground(4);
    c.bench_function("lemmas/rsup<=4", |b| b.iter(|| verify_lemmas(&ctx, black_box(&starts), false)));
}

fn simulation(c: &mut Criterion) {
    let sup = Fixture::new("rsup");
    let ctx = NormContext::new(&sup.tree, Fuel::default());
    let sys = generate_rsim(&sup.entry.trs, &sup.tree, &RpFunction::new(vec![5, 1])).unwrap();
    let (s, t) = (sup.term("e(s(s(0)),0)"), sup.term("e(s(0),d(0))"));
    c.bench_function("simulate_step/rsup root", |b| {
        b.iter(|| {
            // a fresh translator so memoized translations are not reused
            let tr = Translator::new(&ctx, &sys);
            simulate_step(&tr, black_box(&s), black_box(&t)).unwrap()
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = proofs, heights, norms, simulation
}
criterion_main!(benches);
