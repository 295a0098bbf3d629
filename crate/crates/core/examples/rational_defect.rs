//! Normalised defect of D_n(a/q) against its rational main term over
//! n = 2^8..2^18 and all reduced a/q with q <= 50.

use ergw::expsum::rational_scan;

fn main() -> ergw::Result<()> {
    let ns: Vec<u64> = (8..=18).map(|k| 1u64 << k).collect();
    let start = std::time::Instant::now();
    let rows = rational_scan(&ns, 50)?;
    println!("{:>8} {:>12} {:>10} {:>12}", "n", "max", "at a/q", "running max");
    let mut running = 0.0f64;
    for &n in &ns {
        let worst = rows
            .iter()
            .filter(|r| r.n == n)
            .max_by(|a, b| a.normalized.total_cmp(&b.normalized))
            .expect("non-empty scan");
        running = running.max(worst.normalized);
        println!(
            "{:>8} {:>12.6} {:>10} {:>12.6}",
            n,
            worst.normalized,
            worst.frac.to_string(),
            running
        );
    }
    println!("{} points in {:.2?}", rows.len(), start.elapsed());
    Ok(())
}
