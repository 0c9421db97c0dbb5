//! JSON and CSV renderings of character tables, Schur elements and class
//! polynomials. Polynomials are written as canonical strings in `u`.

use crate::chartable::{CharacterTable, SchurData};
use crate::hecke::ClassPolyTable;
use crate::rootsys::WeylGroup;
use serde_json::{json, Map, Value};

fn csv_string(records: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.write_record(&r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV of UTF-8 fields")
}

pub fn chartable_json(table: &CharacterTable) -> Value {
    table.to_json()
}

/// Header `label,dim,<classes>`, one row per representation.
pub fn chartable_csv(table: &CharacterTable) -> String {
    let header = ["label".to_string(), "dim".to_string()].into_iter().chain(table.class_names.iter().cloned()).collect();
    let rows = table.values.iter().enumerate().map(|(i, row)| {
        [table.labels[i].clone(), table.dims[i].to_string()].into_iter().chain(row.iter().map(|x| x.to_string())).collect()
    });
    csv_string(std::iter::once(header).chain(rows))
}

pub fn schur_json(table: &CharacterTable, schur: &SchurData) -> Value {
    json!({ "schema": 1, "type": table.datum.to_string(), "schur": schur.to_json() })
}

pub fn schur_csv(schur: &SchurData) -> String {
    let header = vec!["label".to_string(), "schur".to_string()];
    let rows = schur.labels.iter().zip(&schur.elements).map(|(l, c)| vec![l.clone(), c.to_string()]);
    csv_string(std::iter::once(header).chain(rows))
}

/// Rows keyed by reduced word, each a map from class name to `f_{w,C}`.
pub fn classpoly_json(group: &WeylGroup, table: &CharacterTable, polys: &ClassPolyTable) -> Value {
    let rows: Map<String, Value> = (0..group.order())
        .map(|w| {
            let row: Map<String, Value> = table
                .class_names
                .iter()
                .enumerate()
                .map(|(c, name)| (name.clone(), Value::String(polys.get(w, c).to_string())))
                .collect();
            (group.word_string(w), Value::Object(row))
        })
        .collect();
    json!({ "schema": 1, "type": group.datum().to_string(), "classes": table.class_names, "rows": rows })
}

/// Header `w,<classes>`, rows in enumeration order.
pub fn classpoly_csv(group: &WeylGroup, table: &CharacterTable, polys: &ClassPolyTable) -> String {
    let header = std::iter::once("w".to_string()).chain(table.class_names.iter().cloned()).collect();
    let rows = (0..group.order())
        .map(|w| std::iter::once(group.word_string(w)).chain((0..table.size()).map(|c| polys.get(w, c).to_string())).collect());
    csv_string(std::iter::once(header).chain(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::schur_elements;
    use crate::hecke::class_polynomials;
    use crate::rootsys::{build_group, CartanType, CoxeterDatum};

    fn setup(t: CartanType) -> (WeylGroup, CharacterTable) {
        let g = build_group(&CoxeterDatum::new(t).unwrap(), 10_000).unwrap();
        let table = CharacterTable::for_group(&g).unwrap();
        (g, table)
    }

    #[test]
    fn a1_exports() {
        let (g, t) = setup(CartanType::A(1));
        assert_eq!(chartable_json(&t)["values"], json!([["1", "u"], ["1", "-1"]]));
        let csv = chartable_csv(&t);
        assert_eq!(csv.lines().count(), 3);
        let s = schur_elements(&g, &t).unwrap();
        assert_eq!(schur_json(&t, &s)["schur"], json!({"index": "u+1", "sign": "u^-1+1"}));
        assert!(schur_csv(&s).starts_with("label,schur\n"));
    }

    #[test]
    fn a2_class_polynomials() {
        let (g, t) = setup(CartanType::A(2));
        let f = class_polynomials(&g, &t).unwrap();
        let j = classpoly_json(&g, &t, &f);
        assert_eq!(j["rows"]["sts"], json!({"C1": "0", "Cs": "u", "Cst": "u-1"}));
        let csv = classpoly_csv(&g, &t, &f);
        assert!(csv.starts_with("w,C1,Cs,Cst\n"));
        assert_eq!(csv.lines().count(), 7);
    }
}
