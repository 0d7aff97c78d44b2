use arcrigid::farey::{farey_rigid_set, torus_base, FareyTruncation};
use arcrigid::rigid::RigidSetReport;
use arcrigid::verify::{check_rigidity, CheckOptions};

fn main() {
    let t0 = std::time::Instant::now();
    let tr = FareyTruncation::new(34).unwrap();
    println!("truncation(34): {} vertices, built in {:?}", tr.complex.vertex_count(), t0.elapsed());
    let (_, complex) = farey_rigid_set().unwrap();
    let report = RigidSetReport::assemble(torus_base(), complex, "farey").unwrap();
    let t1 = std::time::Instant::now();
    let out = check_rigidity(&report, &tr.complex, CheckOptions { map_cap: None, parallel: false });
    println!(
        "maps {} induced {} cex {} interior {} star_ok {} in {:?}",
        out.maps_examined, out.maps_induced, out.counterexamples.len(),
        out.interior_maps, out.star_containment_ok, t1.elapsed()
    );
}
