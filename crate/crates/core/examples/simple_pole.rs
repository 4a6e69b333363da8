use abmod::change_of_variable::{module_pushforward, ChangeOfVariable};
use abmod::module::{modules_isomorphic, simple_pole_normalize, AbModule};
use abmod::rat;

fn main() {
    let n = 10;
    let lambda = rat!(3 / 2);
    let xi = AbModule::xi(&lambda, 2, n);
    let theta = ChangeOfVariable::new(vec![rat!(1), rat!(1)]).unwrap();
    let f = module_pushforward(&xi, &theta);
    println!("θ_*Ξ is a simple pole module: {}", f.is_simple_pole());
    let (p, normal) = simple_pole_normalize(&f, &lambda).unwrap();
    println!("normal form equals Ξ: {}", normal == xi.truncate(normal.order()));
    println!("P(0) = {:?}", p.iter().map(|row| row.iter().map(|s| s.coeff(0).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("isomorphic: {}", modules_isomorphic(&f, &xi.truncate(f.order())).unwrap().is_some());
}
