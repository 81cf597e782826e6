"""Export the classic IRIS measurements to data/iris.csv and the species
assignments to data/iris_labels.csv.

Values are written with one decimal place, as in the original tables.
Sample ids are iris_000 .. iris_149 in dataset order.
"""

from pathlib import Path

from sklearn.datasets import load_iris

OUT = Path(__file__).resolve().parent.parent / "data"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    iris = load_iris()
    features = [name.replace(" (cm)", "").replace(" ", "_") for name in iris.feature_names]
    with open(OUT / "iris.csv", "w") as handle:
        handle.write("sample_id," + ",".join(features) + "\n")
        for i, row in enumerate(iris.data):
            cells = ",".join(f"{x:.1f}" for x in row)
            handle.write(f"iris_{i:03d},{cells}\n")
    with open(OUT / "iris_labels.csv", "w") as handle:
        handle.write("sample_id,label\n")
        for i, target in enumerate(iris.target):
            handle.write(f"iris_{i:03d},{iris.target_names[target]}\n")
    print(f"wrote {OUT / 'iris.csv'} and {OUT / 'iris_labels.csv'}")


if __name__ == "__main__":
    main()
