//! Index-only bundles for sporadic groups too large for coset actions.
//! Subgroup orders are products of the factors in their ATLAS structure
//! names; each index is checked to be an integer.

use std::path::Path;

use anyhow::{ensure, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::json;

use crate::write;

/// A maximal class by name and its order as a product of factors.
type Entry<'a> = (&'a str, &'a [&'a str]);

fn product(factors: &[&str]) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, f| {
        let v = match f.split_once('^') {
            Some((b, e)) => BigUint::from(b.parse::<u32>().unwrap()).pow(e.parse::<u32>().unwrap()),
            None => f.parse::<BigUint>().unwrap(),
        };
        acc * v
    })
}

fn bundle(out: &Path, file: &str, name: &str, order: &str, entries: &[Entry]) -> Result<()> {
    let g: BigUint = order.parse()?;
    let mut maximals = Vec::new();
    for (m, factors) in entries {
        let h = product(factors);
        ensure!((&g % &h).is_zero(), "{name}: |{m}| = {h} does not divide the group order");
        maximals.push(json!({"name": m, "order": h.to_string(), "index": (&g / &h).to_string()}));
    }
    let value = json!({
        "format": "gqprim/1",
        "name": name,
        "provenance": "index-only: group order and maximal subgroup orders from the ATLAS of Finite Groups and its online updates",
        "order": order,
        "maximals": maximals,
    });
    write(out, file, &value)
}

pub fn fi23(out: &Path) -> Result<()> {
    bundle(
        out,
        "fi23.json",
        "Fi23",
        "4089470473293004800",
        &[
            ("2.Fi22", &["2", "64561751654400"]),
            ("O8+(3):S3", &["4952179814400", "6"]),
            ("2^2.U6(2).2", &["4", "9196830720", "2"]),
            ("S8(2)", &["47377612800"]),
            ("O7(3)xS3", &["4585351680", "6"]),
            ("2^11.M23", &["2^11", "10200960"]),
            ("3^(1+8).2^(1+6).3^(1+2).2S4", &["3^9", "2^7", "3^3", "48"]),
            ("[3^10].(L3(3)x2)", &["3^10", "5616", "2"]),
            ("S12", &["479001600"]),
            ("(2^2x2^(1+8)).(3xU4(2)).2", &["2^2", "2^9", "3", "25920", "2"]),
            ("2^(6+8):(A7xS3)", &["2^14", "2520", "6"]),
            ("S6(2)xS4", &["1451520", "24"]),
            ("S4(4):4", &["979200", "4"]),
            ("L2(23)", &["6072"]),
        ],
    )
}

pub fn co1(out: &Path) -> Result<()> {
    bundle(
        out,
        "co1.json",
        "Co1",
        "4157776806543360000",
        &[
            ("Co2", &["42305421312000"]),
            ("3.Suz.2", &["3", "448345497600", "2"]),
            ("2^11:M24", &["2^11", "244823040"]),
            ("Co3", &["495766656000"]),
            ("2^(1+8).O8+(2)", &["2^9", "174182400"]),
            ("U6(2).S3", &["9196830720", "6"]),
            ("(A4xG2(4)):2", &["12", "251596800", "2"]),
            ("2^(2+12):(A8xS3)", &["2^14", "20160", "6"]),
            ("2^(4+12).(S3x3S6)", &["2^16", "6", "3", "720"]),
            ("3^2.U4(3).D8", &["9", "3265920", "8"]),
            ("3^6:2M12", &["3^6", "2", "95040"]),
            ("(A5xJ2):2", &["60", "604800", "2"]),
            ("3^(1+4).2U4(2).2", &["3^5", "2", "25920", "2"]),
            ("(A6xU3(3)):2", &["360", "6048", "2"]),
            ("3^(3+4):2(S4xS4)", &["3^7", "2", "576"]),
            ("A9xS3", &["181440", "6"]),
            ("(A7xL2(7)):2", &["2520", "168", "2"]),
            ("(D10x(A5xA5).2).2", &["10", "3600", "2", "2"]),
            ("5^(1+2):GL2(5)", &["125", "480"]),
            ("5^3:(4xA5).2", &["125", "240", "2"]),
            ("7^2:(3x2A4)", &["49", "72"]),
            ("5^2:2A5", &["25", "120"]),
        ],
    )
}

pub fn baby(out: &Path) -> Result<()> {
    bundle(
        out,
        "b.json",
        "B",
        "4154781481226426191177580544000000",
        &[
            ("2.2E6(2):2", &["2", "76532479683774853939200", "2"]),
            ("2^(1+22).Co2", &["2^23", "42305421312000"]),
            ("Fi23", &["4089470473293004800"]),
            ("2^(9+16).S8(2)", &["2^25", "47377612800"]),
            ("Th", &["90745943887872000"]),
            ("(2^2xF4(2)):2", &["4", "3311126603366400", "2"]),
            ("2^(2+10+20).(M22:2xS3)", &["2^32", "887040", "6"]),
            ("[2^30].L5(2)", &["2^30", "9999360"]),
            ("S3xFi22:2", &["6", "64561751654400", "2"]),
            ("[2^35].(S5xL3(2))", &["2^35", "120", "168"]),
            ("HN:2", &["273030912000000", "2"]),
            ("O8+(3):S4", &["4952179814400", "24"]),
            ("3^(1+8).2^(1+6).U4(2).2", &["3^9", "2^7", "25920", "2"]),
            ("(3^2:D8xU4(3).2.2).2", &["9", "8", "3265920", "4", "2"]),
            ("5:4xHS:2", &["20", "44352000", "2"]),
            ("S4x2F4(2)", &["24", "35942400"]),
            ("[3^11].(S4x2S4)", &["3^11", "24", "48"]),
            ("S5xM22:2", &["120", "887040"]),
            ("(S6xL3(4):2):2", &["720", "40320", "2"]),
            ("5^3.L3(5)", &["125", "372000"]),
            ("5^(1+4).2^(1+4).A5.4", &["5^5", "2^5", "60", "4"]),
            ("(S6xS6).4", &["720", "720", "4"]),
            ("5^2:4S4xS5", &["25", "96", "120"]),
            ("L2(49).2", &["58800", "2"]),
            ("L2(31)", &["14880"]),
            ("M11", &["7920"]),
            ("L3(3)", &["5616"]),
            ("L2(17):2", &["2448", "2"]),
            ("L2(11):2", &["660", "2"]),
            ("47:23", &["1081"]),
        ],
    )
}

/// Indices of the 42 maximal classes of the Monster screened here.
const MONSTER_INDICES: &[&str] = &[
    "97239461142009186000",
    "5791748068511982636944259375",
    "439909863614532427326210000000",
    "512372707698741056749515292734375",
    "16009115629875684006343550944921875",
    "282599644298926271851701207040000000",
    "391965121389536908413379198941796875",
    "1484028541986258159045049319424000000",
    "4050306254358548053604918389065234375",
    "6065553341050124859256025907200000000",
    "147971784380684498443615773616452403200",
    "377694424605514962329798663208960000000",
    "16458603283969466072643078298009600000000",
    "69632552355255433384259177414656000000000",
    "2137612234906118719276348954925160732819456",
    "4773365227577903302562875496013496320000000",
    "28114639032330054704286996987125956608000000",
    "69506875251140892549372895050469742538129408",
    "360804534248235702038349794668116443136000000",
    "406922407046882370719943377445244108800000000",
    "718237710928455889676853248854854006227337216",
    "1227948204794415624584299721349471928320000000",
    "1589822867634109834649512818264086937600000000",
    "2672015293632648399095436193656450916024320000",
    "6440808214679248895891202946141582786560000000",
    "11133397056802701662897650806901878816768000000",
    "13812263671701074801477947093362577042833408000",
    "23847343014511647519742692273961304064000000000",
    "70848890361471737854803232407557410652160000000",
    "77933779397618911640283555648313151717376000000",
    "463738191456905920504166612122193960632320000000",
    "547294894007597532814267768386619441152000000000",
    "681636554498124591605978620830727274496000000000",
    "922293247309099546038858646725599428608000000000",
    "1277021419351060909899958126235445362688000000000",
    "4516082186421377575935948496320762111590400000000",
    "7870810683757187569515487092944776514764800000000",
    "11129716594965742092099998690932655055175680000000",
    "33169845024405290471529552748838701026508800000000",
    "49077831923864970595630460699812363763712000000000",
    "118131202455338139749482442245864145761075200000000",
    "492693551703971265784426771318116315247411200000000",
];

const MONSTER_ORDER: &str = "808017424794512875886459904961710757005754368000000000";

pub fn monster(out: &Path) -> Result<()> {
    let g: BigUint = MONSTER_ORDER.parse()?;
    let mut maximals = Vec::new();
    for (i, b) in MONSTER_INDICES.iter().enumerate() {
        let b: BigUint = b.parse()?;
        ensure!((&g % &b).is_zero(), "Monster index {b} does not divide the order");
        maximals.push(json!({"name": format!("M{}", i + 1), "index": b.to_string()}));
    }
    let value = json!({
        "format": "gqprim/1",
        "name": "M",
        "provenance": "index-only: indices of 42 maximal subgroup classes; classes named by position",
        "order": MONSTER_ORDER,
        "maximals": maximals,
    });
    write(out, "m.json", &value)
}
