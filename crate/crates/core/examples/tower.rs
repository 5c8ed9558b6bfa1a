//! Prints the first steps of the tower of double covers over `A(4;4,4,4)`.

use orbicover::coverings::theorem1_iterate;

fn main() {
    let steps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for (r, s) in theorem1_iterate(steps).expect("tower lifts").iter().enumerate() {
        println!(
            "O{}: branch {:?}, locus degree {}, multiplicative {}",
            r + 2,
            s.triple,
            s.locus_degree,
            s.report.multiplicative()
        );
    }
}
