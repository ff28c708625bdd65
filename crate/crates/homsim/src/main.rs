fn main() {
    // probe
    use nalgebra::DMatrix;
    use num_complex::Complex64;
    use rand::Rng;
    use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

    let i = Complex64::new(0.0, 1.0);
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.5, 0.0),
            0.5 * i,
            -0.5 * i,
            Complex64::new(0.5, 0.0),
        ],
    );
    let eig = m.clone().symmetric_eigen();
    println!("eigenvalues: {:?}", eig.eigenvalues.as_slice());
    println!("eigenvectors: {}", eig.eigenvectors);

    let mut rng = ChaCha8Rng::seed_from_u64(42);
    rng.set_stream(7);
    let x: f64 = rng.random();
    println!("draw: {x}");
}
