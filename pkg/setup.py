import os
from setuptools import setup, find_packages

os.chdir(os.path.dirname(os.path.realpath(__file__)))


def get_requirements():
    """
    To update the requirements for sbs_analytics, edit the requirements.txt file.
    """
    with open("requirements.txt", "r") as f:
        req_lines = f.readlines()
    reqs = []
    for line in req_lines:
        # Avoid adding comments.
        line = line.split("#")[0].strip()
        if line:
            reqs.append(line)
    return reqs


def package_data():
    """
    By default, the distribution tools ignore all non-python files.
    Make sure we get the bundled stopword lists.
    """
    file_set = []
    for root, dirs, files in os.walk(os.path.join("sbs_analytics", "data")):
        for f in files:
            file_set.append(os.path.relpath(os.path.join(root, f), "sbs_analytics"))
    return file_set


with open("README.md", encoding="utf-8") as f:
    long_description = f.read()

# setup the package
setup(
    name="sbs_analytics",
    version="1.0.0",
    description="Semantic Brand Score: brand importance from text co-occurrence networks.",
    license="MIT",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"sbs_analytics": package_data()},
    install_requires=get_requirements(),
    extras_require={"test": ["pytest>=7.0"]},
    entry_points={"console_scripts": ["sbs = sbs_analytics.commands:main"]},
    zip_safe=False,
    classifiers=[
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: 3.11",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Information Analysis",
        "Topic :: Text Processing :: Linguistic",
    ],
    python_requires=">=3.11",
)
