use std::sync::Arc as Shared;
use arcrigid::rigid::build_x;
use arcrigid::surface::Surface;
use arcrigid::triangulation::base_triangulation;

fn main() {
    for (g, n) in [(0usize, 4usize), (1, 2)] {
        let base = Shared::new(base_triangulation(Surface::new(g, n).unwrap()).unwrap());
        let t0 = std::time::Instant::now();
        let report = build_x(&base).unwrap();
        println!(
            "S_{{{g},{n}}}: {} vertices, dim {}, built in {:?}",
            report.complex.vertex_count(),
            report.complex.dimension(),
            t0.elapsed()
        );
    }
}
