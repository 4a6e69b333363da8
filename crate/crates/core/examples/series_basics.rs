use abmod::{rat, OreOperator, TruncSeries};

fn main() {
    let n = 8;
    let s = TruncSeries::new(vec![rat!(1), rat!(2), rat!(-1 / 3)], n);
    println!("S        = {s}");
    println!("1/S      = {}", s.inv().unwrap());
    println!("log S    = {}", s.log().unwrap());
    println!("b²S′     = {}", s.b2_derivative());

    // a·S − S·a = b²S′ in the algebra
    let a = OreOperator::a(n);
    let sop = OreOperator::series(s.clone());
    let comm = a.mul(&sop).sub(&sop.mul(&a));
    println!("[a, S]   = {comm}");
    assert_eq!(comm, OreOperator::series(s.b2_derivative()));

    let q = OreOperator::a(n).pow(2).add(&OreOperator::series(s));
    let (t, r) = q.left_divmod(&OreOperator::a_minus(&rat!(5 / 2), n)).unwrap();
    println!("a² + S = T·(a − 5/2·b) + R with\n  T = {t}\n  R = {r}");
}
