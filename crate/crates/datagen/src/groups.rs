//! Recipes for the bundled groups.

use std::path::Path;

use anyhow::Result;
use gqprim::permgroup::{PermGroup, Permutation};
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::field::Field;
use crate::geometry::{axpy, hermitian, symplectic, PointSet};
use crate::search::{assert_complete, find_classes, generate_from_pool, group, offer, ClassSpec};
use crate::{bundle_json, write};

type Job = fn(&Path) -> Result<()>;

pub const JOBS: &[(&str, Job)] = &[
    ("a6", a6),
    ("m11", m11),
    ("m12", m12),
    ("m22", m22),
    ("m23", m23),
    ("psp43", psp43),
    ("psp44", psp44),
    ("psp45", psp45),
    ("psu43", psu43),
    ("psu52", psu52),
    ("j1", crate::janko::j1),
    ("j2", crate::janko::j2),
    ("fi23", crate::giants::fi23),
    ("co1", crate::giants::co1),
    ("b", crate::giants::baby),
    ("m", crate::giants::monster),
    ("quadrangles", crate::quadrangles::quadrangles),
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Parses 1-based cycle notation such as `(1,2,3)(4,5)`.
pub fn cycles(degree: usize, text: &str) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for cyc in text.split(')').filter(|c| c.contains('(')) {
        let pts: Vec<u32> = cyc
            .trim_start_matches(|c: char| c == '(' || c.is_whitespace())
            .split(',')
            .map(|x| x.trim().parse::<u32>().expect("cycle entry") - 1)
            .collect();
        for (k, &x) in pts.iter().enumerate() {
            images[x as usize] = pts[(k + 1) % pts.len()];
        }
    }
    Permutation::from_images(images).expect("valid cycles")
}

fn has_fixed_point(h: &PermGroup) -> bool {
    h.orbits().iter().any(|o| o.len() == 1)
}

/// Whether some non-identity element commutes with every generator.
fn has_centre(h: &PermGroup) -> bool {
    crate::search::elements(h).iter().any(|z| {
        !z.is_identity() && h.generators().iter().all(|g| g.mul(z) == z.mul(g))
    })
}

fn a6(out: &Path) -> Result<()> {
    let g = group(6, vec![cycles(6, "(1,2,3)"), cycles(6, "(2,3,4,5,6)")], "360");
    let specs = vec![
        ClassSpec::new("A5", 60, 2),
        ClassSpec::new("3^2:4", 36, 1),
        ClassSpec::new("S4", 24, 2),
    ];
    let classes = find_classes(&mut rng(1), &g, &specs, Vec::new(), 20000);
    assert_complete(&classes, &specs);
    write(
        out,
        "a6.json",
        &bundle_json(
            "A6",
            "natural action on 6 points, generated by (1,2,3) and (2,3,4,5,6); maximal classes by seeded random search, each certified by a primitive coset action",
            &g,
            &classes,
            &[],
        ),
    )
}

fn mathieu(
    out: &Path,
    file: &str,
    name: &str,
    degree: usize,
    gens: &[&str],
    order: &str,
    specs: Vec<ClassSpec>,
    seed: u64,
) -> Result<()> {
    let g = group(degree, gens.iter().map(|c| cycles(degree, c)).collect(), order);
    let mut found = Vec::new();
    offer(&g, &specs, &mut found, g.stabilizer(0));
    let classes = find_classes(&mut rng(seed), &g, &specs, found, 200000);
    assert_complete(&classes, &specs);
    let prov = format!(
        "standard permutation generators on {degree} points ({}); maximal classes by seeded random search, each certified by a primitive coset action",
        gens.join(", ")
    );
    write(out, file, &bundle_json(name, &prov, &g, &classes, &[]))
}

fn m11(out: &Path) -> Result<()> {
    mathieu(
        out,
        "m11.json",
        "M11",
        11,
        &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"],
        "7920",
        vec![
            ClassSpec::new("M10", 720, 1),
            ClassSpec::new("L2(11)", 660, 1),
            ClassSpec::new("M9:2", 144, 1),
            ClassSpec::new("S5", 120, 1),
            ClassSpec::new("2.S4", 48, 1),
        ],
        11,
    )
}

fn m12(out: &Path) -> Result<()> {
    mathieu(
        out,
        "m12.json",
        "M12",
        12,
        &[
            "(1,2,3,4,5,6,7,8,9,10,11)",
            "(3,7,11,8)(4,10,5,6)",
            "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)",
        ],
        "95040",
        vec![
            ClassSpec::new("M11", 7920, 2),
            ClassSpec::new("A6.2^2", 1440, 2),
            ClassSpec::new("L2(11)", 660, 1),
            ClassSpec::new("3^2:2S4", 432, 2),
            ClassSpec::new("2xS5", 240, 1),
            ClassSpec::new("2^(1+4):S3", 192, 1).with(has_centre),
            ClassSpec::new("4^2:D12", 192, 1),
            ClassSpec::new("A4xS3", 72, 1),
        ],
        12,
    )
}

fn m22(out: &Path) -> Result<()> {
    mathieu(
        out,
        "m22.json",
        "M22",
        22,
        &[
            "(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)",
            "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)",
            "(1,21)(2,10,8,6)(3,13,4,17)(5,19,9,18)(11,22)(12,14,16,20)",
        ],
        "443520",
        vec![
            ClassSpec::new("L3(4)", 20160, 1),
            ClassSpec::new("2^4:A6", 5760, 1),
            ClassSpec::new("A7", 2520, 2),
            ClassSpec::new("2^4:S5", 1920, 1),
            ClassSpec::new("2^3:L3(2)", 1344, 1),
            ClassSpec::new("M10", 720, 1),
            ClassSpec::new("L2(11)", 660, 1),
        ],
        22,
    )
}

fn m23(out: &Path) -> Result<()> {
    mathieu(
        out,
        "m23.json",
        "M23",
        23,
        &[
            "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
            "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
        ],
        "10200960",
        vec![
            ClassSpec::new("M22", 443520, 1),
            ClassSpec::new("L3(4):2", 40320, 1).with(|h| h.orbits().len() == 2 && h.orbits().iter().any(|o| o.len() == 2)),
            ClassSpec::new("2^4:A7", 40320, 1),
            ClassSpec::new("A8", 20160, 1),
            ClassSpec::new("M11", 7920, 1),
            ClassSpec::new("2^4:(3xA5):2", 5760, 1),
            ClassSpec::new("23:11", 253, 1),
        ],
        23,
    )
}

/// Symplectic transvections `x -> x + a B(x,v) v` on PG(3,q).
fn symplectic_group(q: usize, order: &str, seed: u64) -> (Field, PointSet, PermGroup) {
    let f = Field::new(q);
    let pts = PointSet::new(&f, 4, |_| true);
    let w = f.primitive_element();
    let mut pool = Vec::new();
    for v in &pts.points {
        for a in [1u8, w] {
            pool.push(pts.perm(&f, |x| axpy(&f, x, f.mul(a, symplectic(&f, x, v)), v)));
        }
    }
    let g = generate_from_pool(&mut rng(seed), pts.len(), &pool, order);
    (f, pts, g)
}

fn symplectic_bundle(
    out: &Path,
    file: &str,
    name: &str,
    q: usize,
    order: &str,
    specs: Vec<ClassSpec>,
    seed: u64,
) -> Result<()> {
    let (_, pts, g) = symplectic_group(q, order, seed);
    let mut found = Vec::new();
    offer(&g, &specs, &mut found, g.stabilizer(0));
    let classes = find_classes(&mut rng(seed + 1), &g, &specs, found, 400000);
    assert_complete(&classes, &specs);
    let prov = format!(
        "Sp(4,{q}) generated by symplectic transvections, acting on the {} points of PG(3,{q}) for the form x1y4-x4y1+x2y3-x3y2; maximal classes by seeded random search, each certified by a primitive coset action",
        pts.len()
    );
    write(out, file, &bundle_json(name, &prov, &g, &classes, &[]))
}

fn psp43(out: &Path) -> Result<()> {
    symplectic_bundle(
        out,
        "psp43.json",
        "PSp(4,3)",
        3,
        "25920",
        vec![
            ClassSpec::new("2^4:A5", 960, 1),
            ClassSpec::new("S6", 720, 1),
            ClassSpec::new("3^(1+2).2A4", 648, 1).with(has_fixed_point),
            ClassSpec::new("3^3.S4", 648, 1).with(|h| !has_fixed_point(h)),
            ClassSpec::new("2.(A4xA4).2", 576, 1),
        ],
        43,
    )
}

fn psp44(out: &Path) -> Result<()> {
    symplectic_bundle(
        out,
        "psp44.json",
        "PSp(4,4)",
        4,
        "979200",
        vec![
            ClassSpec::new("2^6.(3xA5)", 11520, 2),
            ClassSpec::new("L2(16):2", 8160, 2),
            ClassSpec::new("(A5xA5):2", 7200, 2),
            ClassSpec::new("S6", 720, 1),
        ],
        44,
    )
}

fn psp45(out: &Path) -> Result<()> {
    symplectic_bundle(
        out,
        "psp45.json",
        "PSp(4,5)",
        5,
        "4680000",
        vec![
            ClassSpec::new("5^(1+2):4A5", 30000, 1).with(has_fixed_point),
            ClassSpec::new("5^3:(2xA5).2", 30000, 1).with(|h| !has_fixed_point(h)),
            ClassSpec::new("L2(25):2", 15600, 1),
            ClassSpec::new("2.(A5xA5).2", 14400, 1),
            ClassSpec::new("2^4.A5", 960, 1),
            ClassSpec::new("(3xA5).2^2", 720, 1),
            ClassSpec::new("(2xA5).2^2", 480, 1),
            ClassSpec::new("A6", 360, 1),
        ],
        45,
    )
}

/// Unitary transvections `x -> x + a h(x,v) v` (v isotropic, a + a^r = 0)
/// on the isotropic points of PG(n-1, r^2).
pub fn unitary_group(n: usize, r: usize, order: &str, seed: u64) -> (Field, PointSet, PermGroup) {
    let f = Field::new(r * r);
    let pts = PointSet::new(&f, n, |x| hermitian(&f, x, x) == 0);
    let traceless: Vec<u8> = (1..f.q as u8)
        .filter(|&a| f.add(a, f.pow(a, r)) == 0)
        .collect();
    let mut pool = Vec::new();
    for v in &pts.points {
        for &a in &traceless {
            pool.push(pts.perm(&f, |x| axpy(&f, x, f.mul(a, hermitian(&f, x, v)), v)));
        }
    }
    let g = generate_from_pool(&mut rng(seed), pts.len(), &pool, order);
    (f, pts, g)
}

fn unitary_bundle(
    out: &Path,
    file: &str,
    name: &str,
    (n, r): (usize, usize),
    order: &str,
    specs: Vec<ClassSpec>,
    seed: u64,
) -> Result<()> {
    let (_, pts, g) = unitary_group(n, r, order, seed);
    let mut found = Vec::new();
    offer(&g, &specs, &mut found, g.stabilizer(0));
    let classes = find_classes(&mut rng(seed + 1), &g, &specs, found, 400000);
    assert_complete(&classes, &specs);
    let prov = format!(
        "SU({n},{r}) generated by unitary transvections, acting on the {} isotropic points of PG({},{}) for the hermitian form sum x_i y_(n+1-i)^{r}; maximal classes by seeded random search, each certified by a primitive coset action",
        pts.len(),
        n - 1,
        r * r
    );
    write(out, file, &bundle_json(name, &prov, &g, &classes, &[]))
}

fn psu43(out: &Path) -> Result<()> {
    unitary_bundle(
        out,
        "psu43.json",
        "PSU(4,3)",
        (4, 3),
        "3265920",
        vec![
            ClassSpec::new("3^4:A6", 29160, 1),
            ClassSpec::new("PSU(4,2)", 25920, 2),
            ClassSpec::new("PSL(3,4)", 20160, 2),
            ClassSpec::new("3^(1+4):(2.S4)", 11664, 1),
            ClassSpec::new("PSU(3,3)", 6048, 1),
            ClassSpec::new("2^4:A6", 5760, 2),
            ClassSpec::new("A7", 2520, 4),
            ClassSpec::new("2.(A4xA4).4", 1152, 1),
        ],
        430,
    )
}

fn psu52(out: &Path) -> Result<()> {
    unitary_bundle(
        out,
        "psu52.json",
        "PSU(5,2)",
        (5, 2),
        "13685760",
        vec![
            ClassSpec::new("2^(1+6):(3^2:3:Q8)", 82944, 1),
            ClassSpec::new("3xPSU(4,2)", 77760, 1),
            ClassSpec::new("2^(4+4):GL(2,4)", 46080, 1),
            ClassSpec::new("3^4:S5", 9720, 1),
            ClassSpec::new("(3^2:3:Q8):3xS3", 3888, 1),
            ClassSpec::new("L2(11)", 660, 1),
        ],
        520,
    )
}
