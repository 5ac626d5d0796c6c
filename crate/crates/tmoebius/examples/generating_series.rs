//! Builds generating series in the section degree, verifies the
//! divisor-sum identity behind them, and factors one series over its
//! diagram shapes.

use tmoebius::diagram::SurfaceKind;
use tmoebius::enumerate::enumerate_weighted_shapes;
use tmoebius::gen_series::{factorized_form, generating_series, generator_products, span_check};
use tmoebius::multiplicity::Convention;
use tmoebius::partition::Partition;
use tmoebius::power_series::{g2, h, TruncatedSeries};

fn main() {
    let order = 16;
    let nu: Partition = "1".parse().expect("profile parses");
    for surface in SurfaceKind::BOTH {
        let series = generating_series(
            surface,
            1,
            &Partition::empty(),
            &nu,
            Convention::ValMinusOne,
            order,
        )
        .expect("request is consistent");
        println!("{surface}  genus 1  nu (1): {series}");
    }

    // The two genus-1 series with one free simple end split the series
    // of odd-divisor quotients by exponent parity.
    let lhs = h(order);
    let g = g2(order);
    let rhs = TruncatedSeries::from_coeffs(
        (0..=order)
            .map(|n| g.coeff(n) - g.substitute_power(2).coeff(n))
            .collect(),
    );
    assert_eq!(lhs.coeffs(), rhs.coeffs());
    println!("identity H = G2(y) - G2(y^2) holds to order {order}");
    println!();

    // One shape at a time: a geometric factor per floor against the
    // assembled series.
    let surface = SurfaceKind::M1;
    let shapes = enumerate_weighted_shapes(surface, 1, &nu);
    println!("{surface} genus 1 nu (1): {} shapes contribute", shapes.len());
    let mut total = TruncatedSeries::zero(order);
    for shape in &shapes {
        let factor = factorized_form(
            surface,
            shape,
            &Partition::empty(),
            &nu,
            Convention::ValMinusOne,
            order,
        )
        .expect("shape matches profile");
        for n in 0..=order {
            let sum = total.coeff(n) + factor.coeff(n);
            total.set_coeff(n, sum);
        }
    }
    let direct = generating_series(
        surface,
        1,
        &Partition::empty(),
        &nu,
        Convention::ValMinusOne,
        order,
    )
    .expect("request is consistent");
    assert_eq!(total.coeffs(), direct.coeffs());
    println!("sum of factorized shapes matches the direct series");
    println!();

    // The assembled series lies in the span of derivatives of the
    // three generators.
    let mut basis: Vec<(String, TruncatedSeries)> = Vec::new();
    for k in 0..=2usize {
        basis.push((format!("D^{k} G2(y^2)"), g2(order).substitute_power(2).derive_n(k)));
        basis.push((
            format!("D^{k} H1"),
            tmoebius::power_series::h_odd(order).derive_n(k),
        ));
        basis.push((
            format!("D^{k} H0"),
            tmoebius::power_series::h_even(order).derive_n(k),
        ));
    }
    let basis = generator_products(&basis, 1, order);
    match span_check(&direct, &basis) {
        Ok(cert) => println!(
            "series lies in the generator span (rank {})",
            cert.rank
        ),
        Err(e) => println!("span check fails: {e}"),
    }
}
