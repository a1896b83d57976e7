use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use avk_bench::tangent_lines;
use avk_core::arrangements::{phi_face_route, phi_integral_route, phi_residue_route, Arrangement};
use avk_core::morsify::{catalog_entries, Block};

fn golden_table_sweep(c: &mut Criterion) {
    c.bench_function("residue/golden-table-26", |b| {
        b.iter(|| {
            for e in catalog_entries() {
                let res = e.diagram.boundary_residue().expect(e.name);
                let block = match e.expected_block {
                    Block::Plus => &res.q_plus,
                    Block::Minus => &res.q_minus,
                };
                assert!(block.signed_perm_congruent(&e.expected_m).is_some(), "{}", e.name);
            }
        })
    });
}

fn arrangement_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("phi/m=6");
    let a = tangent_lines(6);
    let routes: [(&str, fn(&Arrangement) -> _); 3] = [
        ("face", phi_face_route),
        ("integral", phi_integral_route),
        ("residue", phi_residue_route),
    ];
    for (name, route) in routes {
        group.bench_with_input(BenchmarkId::from_parameter(name), &a, |b, a| {
            b.iter(|| route(a).unwrap())
        });
    }
    group.finish();

    c.bench_function("phi/m=8/inertia", |b| {
        let a = tangent_lines(8);
        b.iter(|| {
            let phi = phi_residue_route(&a).unwrap();
            (phi.plus.inertia(), phi.minus.inertia())
        })
    });
}

criterion_group!(benches, golden_table_sweep, arrangement_routes);
criterion_main!(benches);
