from os import path
from setuptools import setup


DISTNAME = "rfidpy"
DESCRIPTION = (
    "A deterministic simulator and library for 3D indoor localization of "
    "passive RFID tags with a single mobile reader, reference and virtual "
    "tags, and nearest-RSSI voting."
)
MAINTAINER = "rfidpy developers"
MAINTAINER_EMAIL = "rfidpy@users.noreply.github.com"


# read the contents of your README file
this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, "README.md"), encoding="utf-8") as f:
    LONG_DESCRIPTION = f.read()


if __name__ == "__main__":
    setup(
        name=DISTNAME,
        maintainer=MAINTAINER,
        maintainer_email=MAINTAINER_EMAIL,
        description=DESCRIPTION,
        long_description=LONG_DESCRIPTION,
        long_description_content_type="text/markdown",
        version="0.1.0",
        packages=["rfidpy"],
        python_requires=">=3.8",
        install_requires=[
            "matplotlib>=2.0.0",
            "numpy>=1.17.0",
            "pandas>=1.5.0",
        ],
        entry_points={"console_scripts": ["rfidpy = rfidpy.cli:main"]},
        zip_safe=False,  # the package can run out of an .egg file
        classifiers=[
            "Intended Audience :: Science/Research",
            "License :: OSI Approved :: BSD License",
            "Programming Language :: Python",
            "Topic :: Scientific/Engineering",
            "Operating System :: Microsoft :: Windows",
            "Operating System :: POSIX",
            "Operating System :: Unix",
            "Operating System :: MacOS",
        ],
        package_data={DISTNAME: ["example-data/*.json"]},
    )
