//! Regenerates every table and prints the comparison with the shipped data.
fn main() {
    let (_, report) = nhtopo::ktable::generate_tables().expect("sweep");
    print!("{}", report.render());
}
