import setuptools

try:
    from sphinx.setup_command import BuildDoc
except ImportError:
    BuildDoc = None

# ========== Constants ==========
EXCLUDED_PACKAGES = ["test", "tests"]
PACKAGES = setuptools.find_packages(exclude=EXCLUDED_PACKAGES)
SCRIPTS = ["bin/fiberpowers"]
CMDCLASS = {"build_sphinx": BuildDoc} if BuildDoc is not None else {}
INSTALL_REQUIRES = ["numpy", "sympy"]
EXTRAS_REQUIRE = {"test": ["pytest", "hypothesis"], "docs": ["sphinx"]}


# ========== Functions ==========
with open("README.md", "r") as fh:
    long_description = fh.read()

# ========== Package Setup ==========
setuptools.setup(
    name="fiberpowers",
    version="0.1.0",
    cmdclass=CMDCLASS,
    description="Powers, symbolic powers and homological invariants of fiber products of monomial ideals",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=PACKAGES,
    scripts=SCRIPTS,
    python_requires=">=3.8",
    install_requires=INSTALL_REQUIRES,
    extras_require=EXTRAS_REQUIRE,
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    command_options={
        "build_sphinx": {
            "project": ("setup.py", "name"),
            "version": ("setup.py", "version"),
            "release": ("setup.py", "release"),
            "source_dir": ("setup.py", "doc"),
        }
    },
)
