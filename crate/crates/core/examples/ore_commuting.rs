use abmod::ore::{commuting_rewrite, standard_computation};
use abmod::{rat, TruncSeries};

fn main() {
    let n = 12;
    let s = TruncSeries::new(vec![rat!(1), rat!(1), rat!(0), rat!(0), rat!(3)], n);
    let c = commuting_rewrite(&rat!(7 / 2), 3, &s, &rat!(0)).unwrap();
    println!("λ2 = {}", c.lambda2);
    println!("U  = {}", c.u);
    println!("both sides agree: {}", c.holds());

    match commuting_rewrite(&rat!(7 / 2), 2, &TruncSeries::new(vec![rat!(1), rat!(0), rat!(1)], n), &rat!(0)) {
        Err(e) => println!("S with a b^p term: {e}"),
        Ok(_) => println!("unexpected success"),
    }

    let s1 = TruncSeries::new(vec![rat!(1), rat!(2)], n);
    let s2 = TruncSeries::new(vec![rat!(1), rat!(-1), rat!(1 / 2)], n);
    let sc = standard_computation(&rat!(6), 2, 2, &s1, &s2).unwrap();
    println!(
        "rank 3: conservation {}, operator identity {}, b^p2 coefficient {} ((p1+p2)/p1·α = {})",
        sc.conservation_holds, sc.operator_identity_holds, sc.coeff_p2, sc.variant_quotient
    );
}
